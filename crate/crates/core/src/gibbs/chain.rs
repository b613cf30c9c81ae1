use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::interaction::InteractionSpec;
use super::lattice::{Boundary, Geometry, LatticeBox};
use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepOrder {
    #[default]
    Systematic,
    /// |Λ| updates at uniformly chosen sites.
    Random,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum InitialState {
    Uniform { state: u8 },
    Random,
}

pub fn acceptance_probability(delta: f64, beta: f64) -> f64 {
    if delta <= 0.0 {
        1.0
    } else {
        (-beta * delta).exp()
    }
}

/// Single-site Metropolis chain on a finite box. Proposals draw a state
/// uniformly from the whole single-site space, so at β = 0 every update is
/// a fresh uniform draw.
#[derive(Debug, Clone)]
pub struct GibbsChain {
    geometry: Geometry,
    spins: Option<Vec<f64>>,
    beta: f64,
    order: SweepOrder,
    state: Vec<u8>,
    rng: ChaCha8Rng,
    sweeps: u64,
}

impl GibbsChain {
    pub fn new(
        interaction: &InteractionSpec,
        dims: LatticeBox,
        boundary: &Boundary,
        beta: f64,
        seed: u64,
        initial: &InitialState,
    ) -> Result<Self> {
        if !(beta.is_finite() && beta >= 0.0) {
            return Err(invalid("beta", "must be finite and ≥ 0"));
        }
        let geometry = Geometry::new(interaction, dims, boundary)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = geometry.q();
        let sigma: Vec<u8> = match initial {
            InitialState::Uniform { state } => vec![*state; geometry.sites()],
            InitialState::Random => (0..geometry.sites()).map(|_| rng.gen_range(0..q) as u8).collect(),
        };
        let state = geometry.glue(&sigma)?;
        Ok(GibbsChain {
            geometry,
            spins: interaction.alphabet().spin_map().map(<[f64]>::to_vec),
            beta,
            order: SweepOrder::Systematic,
            state,
            rng,
            sweeps: 0,
        })
    }

    pub fn with_order(mut self, order: SweepOrder) -> Self {
        self.order = order;
        self
    }

    pub fn geometry(&self) -> &Geometry {
        &self.geometry
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn sweeps(&self) -> u64 {
        self.sweeps
    }

    pub fn config(&self) -> Vec<u8> {
        (0..self.geometry.sites())
            .map(|i| self.state[self.geometry.ext_index(i)])
            .collect()
    }

    pub fn set_config(&mut self, sigma: &[u8]) -> Result<()> {
        self.state = self.geometry.glue(sigma)?;
        Ok(())
    }

    pub fn energy(&self) -> f64 {
        self.geometry.energy_of(&self.state)
    }

    pub fn delta_energy(&self, site: usize, new: u8) -> f64 {
        self.geometry.delta(&self.state, site, new)
    }

    pub(crate) fn spin_values(&self) -> Result<&[f64]> {
        self.spins
            .as_deref()
            .ok_or_else(|| Error::Interaction("single-site space has no numeric values".into()))
    }

    pub(crate) fn state_at(&self, site: usize) -> u8 {
        self.state[self.geometry.ext_index(site)]
    }

    fn update(&mut self, site: usize) {
        let q = self.geometry.q();
        let new = self.rng.gen_range(0..q) as u8;
        let ext = self.geometry.ext_index(site);
        if new == self.state[ext] {
            return;
        }
        let delta = self.geometry.delta(&self.state, site, new);
        if delta <= 0.0 || self.rng.gen::<f64>() < (-self.beta * delta).exp() {
            self.state[ext] = new;
        }
    }

    pub fn sweep(&mut self) {
        let n = self.geometry.sites();
        match self.order {
            SweepOrder::Systematic => (0..n).for_each(|s| self.update(s)),
            SweepOrder::Random => {
                for _ in 0..n {
                    let s = self.rng.gen_range(0..n);
                    self.update(s);
                }
            }
        }
        self.sweeps += 1;
    }

    pub fn run(&mut self, sweeps: u64) {
        for _ in 0..sweeps {
            self.sweep();
        }
    }

    /// Probability that one random-site update moves σ to σ with `site`
    /// set to `new ≠ σ_site`.
    pub fn single_update_kernel(&self, sigma: &[u8], site: usize, new: u8) -> Result<f64> {
        let state = self.geometry.glue(sigma)?;
        let delta = self.geometry.delta(&state, site, new);
        let n = self.geometry.sites() as f64;
        let q = self.geometry.q() as f64;
        Ok(acceptance_probability(delta, self.beta) / (n * q))
    }
}

/// One systematic sweep.
pub fn metropolis_sweep(chain: &mut GibbsChain) {
    chain.sweep();
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn incremental_delta_matches_full_difference() {
        let ising = InteractionSpec::ising(2, 0.8, 0.2).unwrap();
        let mut chain = GibbsChain::new(
            &ising,
            LatticeBox { width: 5, height: 4 },
            &Boundary::uniform(1, 1),
            0.5,
            11,
            &InitialState::Random,
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            chain.sweep();
            let site = rng.gen_range(0..20);
            let mut sigma = chain.config();
            let before = chain.geometry().local_hamiltonian(&sigma).unwrap();
            sigma[site] ^= 1;
            let after = chain.geometry().local_hamiltonian(&sigma).unwrap();
            assert!((chain.delta_energy(site, sigma[site]) - (after - before)).abs() < 1e-10);
        }
    }

    #[test]
    fn same_seed_same_trajectory() {
        let ising = InteractionSpec::ising(1, 1.0, 0.0).unwrap();
        let make = || {
            let mut c = GibbsChain::new(&ising, LatticeBox::line(50), &Boundary::Free, 0.4, 3, &InitialState::Random)
                .unwrap()
                .with_order(SweepOrder::Random);
            c.run(30);
            c.config()
        };
        assert_eq!(make(), make());
    }

    #[test]
    fn detailed_balance_on_three_sites() {
        let ising = InteractionSpec::ising(1, 1.0, 0.4).unwrap();
        let chain =
            GibbsChain::new(&ising, LatticeBox::line(3), &Boundary::uniform(0, 1), 0.9, 0, &InitialState::Random)
                .unwrap();
        let pi = chain.geometry().gibbs_distribution(0.9).unwrap();
        for code in 0..8usize {
            let sigma: Vec<u8> = (0..3).map(|i| ((code >> (2 - i)) & 1) as u8).collect();
            for site in 0..3 {
                let mut other = sigma.clone();
                other[site] ^= 1;
                let forward = pi[code] * chain.single_update_kernel(&sigma, site, other[site]).unwrap();
                let back = pi[chain.geometry().config_code(&other)]
                    * chain.single_update_kernel(&other, site, sigma[site]).unwrap();
                assert!((forward - back).abs() < 1e-15, "{forward} {back}");
            }
        }
    }
}
