use serde::{Deserialize, Serialize};

use super::interaction::{InteractionSpec, Term};
use crate::error::{invalid, Error, Result};

/// A finite box Λ = [0, width) × [0, height); height is 1 in one dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeBox {
    pub width: usize,
    pub height: usize,
}

impl LatticeBox {
    pub fn line(n: usize) -> Self {
        LatticeBox { width: n, height: 1 }
    }

    pub fn square(side: usize) -> Self {
        LatticeBox {
            width: side,
            height: side,
        }
    }

    pub fn sites(&self) -> usize {
        self.width * self.height
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FrameFill {
    Uniform { state: u8 },
    /// Row-major states over the box widened by the thickness on every
    /// side; entries inside Λ are ignored.
    Explicit { states: Vec<u8> },
}

/// How sites outside Λ are treated. Only `Frame` is a boundary condition
/// in the sense of the conditional kernel; the others are conveniences.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Boundary {
    /// Terms reaching outside Λ are dropped.
    Free,
    Periodic,
    Frame { thickness: usize, fill: FrameFill },
}

impl Boundary {
    pub fn uniform(state: u8, thickness: usize) -> Self {
        Boundary::Frame {
            thickness,
            fill: FrameFill::Uniform { state },
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Boundary::Free => "free",
            Boundary::Periodic => "periodic",
            Boundary::Frame { .. } => "frame",
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Slot {
    pub placement: u32,
    pub weight: u32,
}

#[derive(Debug, Clone)]
pub(crate) struct Placement {
    pub term: u32,
    pub sites: Vec<u32>,
}

/// Every translate of every term that meets Λ, resolved to indices in an
/// extended state array holding Λ and its frame.
#[derive(Debug, Clone)]
pub struct Geometry {
    dims: LatticeBox,
    q: usize,
    terms: Vec<Term>,
    pub(crate) placements: Vec<Placement>,
    pub(crate) by_site: Vec<Vec<Slot>>,
    interior: Vec<u32>,
    base: Vec<u8>,
}

impl Geometry {
    pub fn new(interaction: &InteractionSpec, dims: LatticeBox, boundary: &Boundary) -> Result<Self> {
        let dim = interaction.dimension();
        if dims.sites() == 0 {
            return Err(invalid("lattice", "box is empty"));
        }
        if dim == 1 && dims.height != 1 {
            return Err(invalid("lattice", "a 1D box has height 1"));
        }
        let q = interaction.q();
        let terms = interaction.compiled_terms();
        let range = interaction.range();
        let pad = match boundary {
            Boundary::Frame { thickness, .. } => {
                if *thickness < range {
                    return Err(Error::FrameTooThin {
                        have: *thickness,
                        need: range,
                    });
                }
                *thickness
            }
            _ => 0,
        };
        let (w, h) = (dims.width as i64, dims.height as i64);
        let pad_y = if dim == 2 { pad as i64 } else { 0 };
        let ext_w = w + 2 * pad as i64;
        let ext_h = h + 2 * pad_y;
        let ext = move |x: i64, y: i64| ((y + pad_y) * ext_w + x + pad as i64) as u32;
        let inside = |x: i64, y: i64| (0..w).contains(&x) && (0..h).contains(&y);

        let mut base = vec![0u8; (ext_w * ext_h) as usize];
        if let Boundary::Frame { fill, .. } = boundary {
            match fill {
                FrameFill::Uniform { state } => {
                    if *state as usize >= q {
                        return Err(invalid("boundary", format!("state {state} outside the alphabet")));
                    }
                    base.fill(*state);
                }
                FrameFill::Explicit { states } => {
                    if states.len() != base.len() {
                        return Err(invalid(
                            "boundary",
                            format!("frame has {} states, expected {}", states.len(), base.len()),
                        ));
                    }
                    if states.iter().any(|&s| s as usize >= q) {
                        return Err(invalid("boundary", "frame state outside the alphabet"));
                    }
                    base.copy_from_slice(states);
                }
            }
        }
        let interior: Vec<u32> = (0..h)
            .flat_map(|y| (0..w).map(move |x| ext(x, y)))
            .collect();
        let mut ext_to_site = vec![u32::MAX; base.len()];
        for (i, &e) in interior.iter().enumerate() {
            ext_to_site[e as usize] = i as u32;
        }

        let mut placements = Vec::new();
        for (ti, term) in terms.iter().enumerate() {
            let offs = term.offsets();
            let lo = |a: usize| offs.iter().map(|o| o[a] as i64).min().unwrap();
            let hi = |a: usize| offs.iter().map(|o| o[a] as i64).max().unwrap();
            if matches!(boundary, Boundary::Periodic) {
                if hi(0) - lo(0) >= w || hi(1) - lo(1) >= h {
                    return Err(invalid("lattice", "periodic box is narrower than a term"));
                }
                for y in 0..h {
                    for x in 0..w {
                        let sites = offs
                            .iter()
                            .map(|o| ext((x + o[0] as i64).rem_euclid(w), (y + o[1] as i64).rem_euclid(h)))
                            .collect();
                        placements.push(Placement { term: ti as u32, sites });
                    }
                }
                continue;
            }
            for y in -hi(1)..h - lo(1) {
                for x in -hi(0)..w - lo(0) {
                    let pts: Vec<(i64, i64)> = offs.iter().map(|o| (x + o[0] as i64, y + o[1] as i64)).collect();
                    let touching = pts.iter().any(|&(a, b)| inside(a, b));
                    let contained = pts.iter().all(|&(a, b)| inside(a, b));
                    if !touching || (matches!(boundary, Boundary::Free) && !contained) {
                        continue;
                    }
                    let sites = pts.iter().map(|&(a, b)| ext(a, b)).collect();
                    placements.push(Placement { term: ti as u32, sites });
                }
            }
        }

        let mut by_site = vec![Vec::new(); interior.len()];
        for (pi, p) in placements.iter().enumerate() {
            let k = p.sites.len();
            for (pos, &s) in p.sites.iter().enumerate() {
                let site = ext_to_site[s as usize];
                if site != u32::MAX {
                    by_site[site as usize].push(Slot {
                        placement: pi as u32,
                        weight: q.pow((k - 1 - pos) as u32) as u32,
                    });
                }
            }
        }
        Ok(Geometry {
            dims,
            q,
            terms,
            placements,
            by_site,
            interior,
            base,
        })
    }

    pub fn dims(&self) -> LatticeBox {
        self.dims
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn sites(&self) -> usize {
        self.interior.len()
    }

    pub fn placement_count(&self) -> usize {
        self.placements.len()
    }

    /// σ^Λ glued to the frame.
    pub fn glue(&self, sigma: &[u8]) -> Result<Vec<u8>> {
        if sigma.len() != self.sites() {
            return Err(Error::LengthMismatch {
                left: sigma.len(),
                right: self.sites(),
            });
        }
        if sigma.iter().any(|&s| s as usize >= self.q) {
            return Err(invalid("sigma", "state outside the alphabet"));
        }
        let mut state = self.base.clone();
        for (i, &e) in self.interior.iter().enumerate() {
            state[e as usize] = sigma[i];
        }
        Ok(state)
    }

    pub(crate) fn ext_index(&self, site: usize) -> usize {
        self.interior[site] as usize
    }

    fn code(&self, p: &Placement, state: &[u8]) -> usize {
        p.sites.iter().fold(0, |acc, &s| acc * self.q + state[s as usize] as usize)
    }

    /// H over a glued state.
    pub(crate) fn energy_of(&self, state: &[u8]) -> f64 {
        self.placements
            .iter()
            .map(|p| self.terms[p.term as usize].energy(self.code(p, state)))
            .sum()
    }

    /// H(σ with site set to `new`) − H(σ), from the terms touching the site.
    pub(crate) fn delta(&self, state: &[u8], site: usize, new: u8) -> f64 {
        let old = state[self.interior[site] as usize] as i64;
        let step = new as i64 - old;
        if step == 0 {
            return 0.0;
        }
        self.by_site[site]
            .iter()
            .map(|slot| {
                let p = &self.placements[slot.placement as usize];
                let term = &self.terms[p.term as usize];
                let code = self.code(p, state);
                let moved = (code as i64 + step * slot.weight as i64) as usize;
                term.energy(moved) - term.energy(code)
            })
            .sum()
    }

    pub fn local_hamiltonian(&self, sigma: &[u8]) -> Result<f64> {
        Ok(self.energy_of(&self.glue(sigma)?))
    }

    /// Exact Gibbs distribution over all q^|Λ| configurations, indexed by
    /// the configuration code with site 0 most significant.
    pub fn gibbs_distribution(&self, beta: f64) -> Result<Vec<f64>> {
        if !(beta.is_finite() && beta >= 0.0) {
            return Err(invalid("beta", "must be finite and ≥ 0"));
        }
        let states = (self.q as u128).checked_pow(self.sites() as u32).unwrap_or(u128::MAX);
        if states > ENUMERATION_LIMIT {
            return Err(Error::TooLargeForEnumeration {
                states,
                limit: ENUMERATION_LIMIT,
            });
        }
        let n = self.sites();
        let mut sigma = vec![0u8; n];
        let mut log_w = Vec::with_capacity(states as usize);
        for code in 0..states as usize {
            let mut c = code;
            for s in sigma.iter_mut().rev() {
                *s = (c % self.q) as u8;
                c /= self.q;
            }
            log_w.push(-beta * self.local_hamiltonian(&sigma)?);
        }
        let max = log_w.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let z: f64 = log_w.iter().map(|l| (l - max).exp()).sum();
        Ok(log_w.iter().map(|l| (l - max).exp() / z).collect())
    }

    pub fn config_code(&self, sigma: &[u8]) -> usize {
        sigma.iter().fold(0, |acc, &s| acc * self.q + s as usize)
    }
}

/// Largest configuration count handled by exact enumeration.
pub const ENUMERATION_LIMIT: u128 = 1 << 20;

pub fn local_hamiltonian(
    interaction: &InteractionSpec,
    dims: LatticeBox,
    boundary: &Boundary,
    sigma: &[u8],
) -> Result<f64> {
    Geometry::new(interaction, dims, boundary)?.local_hamiltonian(sigma)
}

/// exp(−βH^ω_Λ(σ)) / Z^ω_Λ with Z by exhaustive enumeration.
pub fn conditional_probability(
    interaction: &InteractionSpec,
    dims: LatticeBox,
    boundary: &Boundary,
    beta: f64,
    sigma: &[u8],
) -> Result<f64> {
    let g = Geometry::new(interaction, dims, boundary)?;
    g.glue(sigma)?;
    Ok(g.gibbs_distribution(beta)?[g.config_code(sigma)])
}
