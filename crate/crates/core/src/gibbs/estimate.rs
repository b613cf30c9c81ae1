use serde::{Deserialize, Serialize};

use super::chain::{GibbsChain, InitialState};
use super::interaction::InteractionSpec;
use super::lattice::{Boundary, LatticeBox};
use crate::error::{invalid, Result};
use crate::seeds::derive;

/// Time average with a batch-means standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub mean: f64,
    pub std_error: f64,
    pub batches: usize,
    pub samples: usize,
}

pub fn batch_means(series: &[f64], batches: usize) -> Result<Estimate> {
    if batches < 2 || series.len() < batches {
        return Err(invalid("batches", "need at least two batches of one sample each"));
    }
    let size = series.len() / batches;
    let used = &series[..size * batches];
    let means: Vec<f64> = used.chunks(size).map(|c| c.iter().sum::<f64>() / size as f64).collect();
    let mean = means.iter().sum::<f64>() / batches as f64;
    let var = means.iter().map(|m| (m - mean).powi(2)).sum::<f64>() / (batches - 1) as f64;
    Ok(Estimate {
        mean,
        std_error: (var / batches as f64).sqrt(),
        batches,
        samples: used.len(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairCorrelation {
    pub n: usize,
    #[serde(flatten)]
    pub estimate: Estimate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairMode {
    /// Average σ_xσ_{x+n} over every pair inside Λ, along each axis.
    #[default]
    AllTranslates,
    /// The single pair straddling the center of Λ along the first axis.
    Centered,
}

/// Monte Carlo run settings shared by the estimators.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RunLength {
    pub sweeps: u64,
    pub burn_in: u64,
    pub batches: usize,
}

impl RunLength {
    fn validate(&self) -> Result<()> {
        if self.sweeps < self.batches as u64 {
            return Err(invalid("sweeps", "fewer sweeps than batches"));
        }
        Ok(())
    }
}

fn pair_value(chain: &GibbsChain, n: usize, mode: PairMode) -> Result<f64> {
    let LatticeBox { width, height } = chain.geometry().dims();
    let v = chain.spin_values()?;
    let at = |x: usize, y: usize| v[chain.state_at(y * width + x) as usize];
    if n >= width {
        return Err(invalid("n", format!("distance {n} does not fit in width {width}")));
    }
    match mode {
        PairMode::Centered => {
            let x0 = (width - n) / 2;
            let y = height / 2;
            Ok(at(x0, y) * at(x0 + n, y))
        }
        PairMode::AllTranslates => {
            let (mut sum, mut count) = (0.0, 0usize);
            for y in 0..height {
                for x in 0..width - n {
                    sum += at(x, y) * at(x + n, y);
                    count += 1;
                }
            }
            if height > 1 && n < height {
                for y in 0..height - n {
                    for x in 0..width {
                        sum += at(x, y) * at(x, y + n);
                        count += 1;
                    }
                }
            }
            Ok(sum / count as f64)
        }
    }
}

fn mean_spin(chain: &GibbsChain) -> Result<f64> {
    let v = chain.spin_values()?;
    let n = chain.geometry().sites();
    Ok((0..n).map(|s| v[chain.state_at(s) as usize]).sum::<f64>() / n as f64)
}

/// Per-sweep series of f(n) for each distance and of the magnetization.
fn record(chain: &mut GibbsChain, distances: &[usize], mode: PairMode, run: &RunLength) -> Result<Vec<Vec<f64>>> {
    run.validate()?;
    chain.run(run.burn_in);
    let mut series = vec![Vec::with_capacity(run.sweeps as usize); distances.len() + 1];
    for _ in 0..run.sweeps {
        chain.sweep();
        for (k, &n) in distances.iter().enumerate() {
            series[k].push(pair_value(chain, n, mode)?);
        }
        series[distances.len()].push(mean_spin(chain)?);
    }
    Ok(series)
}

/// Time-averaged σ⁰σⁿ after burn-in, one estimate per distance.
pub fn pair_correlation_mc(
    chain: &mut GibbsChain,
    distances: &[usize],
    mode: PairMode,
    run: &RunLength,
) -> Result<Vec<PairCorrelation>> {
    let series = record(chain, distances, mode, run)?;
    distances
        .iter()
        .zip(&series)
        .map(|(&n, s)| {
            Ok(PairCorrelation {
                n,
                estimate: batch_means(s, run.batches)?,
            })
        })
        .collect()
}

pub fn magnetization_mc(chain: &mut GibbsChain, run: &RunLength) -> Result<Estimate> {
    let series = record(chain, &[], PairMode::AllTranslates, run)?;
    batch_means(&series[0], run.batches)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MixtureReport {
    pub correlations: Vec<PairCorrelation>,
    pub plus_magnetization: Estimate,
    pub minus_magnetization: Estimate,
    pub mixture_magnetization: Estimate,
}

/// The 1/2–1/2 mixture of the runs under uniform `plus` and `minus`
/// frames: observables are averaged sweep by sweep over the matched pair
/// of chains, each started from its own frame state.
#[allow(clippy::too_many_arguments)]
pub fn symmetric_mixture_correlation(
    interaction: &InteractionSpec,
    dims: LatticeBox,
    beta: f64,
    states: (u8, u8),
    distances: &[usize],
    mode: PairMode,
    run: &RunLength,
    seed: u64,
) -> Result<MixtureReport> {
    let thickness = interaction.range();
    let chain = |state: u8, index: u64| {
        GibbsChain::new(
            interaction,
            dims,
            &Boundary::uniform(state, thickness),
            beta,
            derive(seed, index),
            &InitialState::Uniform { state },
        )
    };
    let (mut plus, mut minus) = (chain(states.0, 0)?, chain(states.1, 1)?);
    let (a, b) = rayon::join(
        || record(&mut plus, distances, mode, run),
        || record(&mut minus, distances, mode, run),
    );
    let (a, b) = (a?, b?);
    let mixed: Vec<Vec<f64>> = a
        .iter()
        .zip(&b)
        .map(|(x, y)| x.iter().zip(y).map(|(u, v)| 0.5 * (u + v)).collect())
        .collect();
    let m = distances.len();
    Ok(MixtureReport {
        correlations: distances
            .iter()
            .zip(&mixed)
            .map(|(&n, s)| {
                Ok(PairCorrelation {
                    n,
                    estimate: batch_means(s, run.batches)?,
                })
            })
            .collect::<Result<_>>()?,
        plus_magnetization: batch_means(&a[m], run.batches)?,
        minus_magnetization: batch_means(&b[m], run.batches)?,
        mixture_magnetization: batch_means(&mixed[m], run.batches)?,
    })
}
