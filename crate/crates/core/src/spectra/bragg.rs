//! Multi-N scaling of Fourier–Bohr coefficients.
//!
//! For a Bragg atom at k, |c_N(k)| tends to a positive constant, so the
//! log-log slope against N is near 0. Where the local spectral measure is
//! absolutely continuous, |c_N(k)| decays like N^{−1/2}. Singular continuous
//! parts decay at intermediate rates and usually land in `Indeterminate`.
//!
//! These reports are scaling evidence from finite data. They do not
//! certify spectral type; in particular, nothing here decides whether the
//! absence of absolutely continuous diffraction rules out absolutely
//! continuous dynamical spectrum.

use std::f64::consts::{PI, TAU};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::fourier::{golden_max, modulus};
use super::periodogram::periodogram;
use crate::error::{invalid, Result};
use crate::symbolic::SequenceWindow;

/// Moduli below this are treated as exact zeros.
pub const ZERO_FLOOR: f64 = 1e-12;

const GOLDEN_ITERATIONS: usize = 48;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassificationBands {
    /// exponent > atom_above ⇒ atom
    pub atom_above: f64,
    /// exponent < continuous_below ⇒ continuous-like
    pub continuous_below: f64,
}

impl Default for ClassificationBands {
    fn default() -> Self {
        ClassificationBands {
            atom_above: -0.15,
            continuous_below: -0.35,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpectralClass {
    Atom,
    Continuous,
    Indeterminate,
}

impl ClassificationBands {
    pub fn classify(&self, exponent: f64) -> SpectralClass {
        if exponent > self.atom_above {
            SpectralClass::Atom
        } else if exponent < self.continuous_below {
            SpectralClass::Continuous
        } else {
            SpectralClass::Indeterminate
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BraggPeak {
    pub k: f64,
    /// |c_N(k)|² at the largest N.
    pub intensity: f64,
    /// Least-squares slope of ln|c_N| against ln N.
    pub exponent: f64,
    pub class: SpectralClass,
    /// (N, |c_N|) as measured.
    pub moduli: Vec<(usize, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BraggReport {
    pub system: String,
    pub n_list: Vec<usize>,
    pub grid_size: usize,
    pub bands: ClassificationBands,
    pub peaks: Vec<BraggPeak>,
    pub note: String,
}

const NOTE: &str = "Scaling evidence only: classes come from finite-N exponents and do not \
certify pure point, singular or absolutely continuous spectrum.";

impl BraggReport {
    pub fn atoms(&self) -> impl Iterator<Item = &BraggPeak> {
        self.peaks.iter().filter(|p| p.class == SpectralClass::Atom)
    }
}

/// Slope of ln y against ln N, with y floored at [`ZERO_FLOOR`].
pub fn fit_exponent(points: &[(usize, f64)]) -> f64 {
    let xs: Vec<f64> = points.iter().map(|p| (p.0 as f64).ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.max(ZERO_FLOOR).ln()).collect();
    let m = xs.len() as f64;
    let xbar = xs.iter().sum::<f64>() / m;
    let ybar = ys.iter().sum::<f64>() / m;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - xbar) * (y - ybar)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - xbar).powi(2)).sum();
    sxy / sxx
}

fn check_sizes(n_list: &[usize]) -> Result<()> {
    if n_list.len() < 3 {
        return Err(invalid("n_list", "need at least 3 sizes for a scaling fit"));
    }
    if n_list.windows(2).any(|w| w[1] < 2 * w[0]) || n_list[0] == 0 {
        return Err(invalid("n_list", "sizes must be positive and at least double each step"));
    }
    Ok(())
}

fn windows<G>(generator: &G, n_list: &[usize]) -> Result<Vec<Vec<f64>>>
where
    G: Fn(usize) -> Result<SequenceWindow>,
{
    n_list
        .iter()
        .map(|&n| {
            let w = generator(n)?;
            if w.len() != n {
                return Err(invalid("generator", format!("asked for {n} entries, got {}", w.len())));
            }
            w.spins()
        })
        .collect()
}

fn peak_from(k: f64, moduli: Vec<(usize, f64)>, bands: &ClassificationBands) -> BraggPeak {
    let exponent = fit_exponent(&moduli);
    let last = moduli.last().map(|m| m.1).unwrap_or(0.0);
    let class = if last < ZERO_FLOOR {
        SpectralClass::Continuous
    } else {
        bands.classify(exponent)
    };
    BraggPeak {
        k,
        intensity: last * last,
        exponent,
        class,
        moduli,
    }
}

/// Locate the `top_m` strongest periodogram peaks at the largest N, then
/// track each through every N in `n_list`: at size N the modulus is
/// maximized within ±π/N of the peak, which follows off-grid atoms (the
/// golden-section step) and treats every size alike for non-atomic bins.
pub fn bragg_scan<G>(
    system: &str,
    generator: G,
    n_list: &[usize],
    grid_size: usize,
    top_m: usize,
    bands: ClassificationBands,
) -> Result<BraggReport>
where
    G: Fn(usize) -> Result<SequenceWindow>,
{
    check_sizes(n_list)?;
    let spins = windows(&generator, n_list)?;
    let largest = generator(*n_list.last().unwrap())?;
    let spectrum = periodogram(&largest, grid_size)?;
    let candidates = spectrum.peaks(top_m, 2);

    let mut peaks: Vec<BraggPeak> = candidates
        .par_iter()
        .map(|&j| {
            let mut k = spectrum.k(j);
            let mut moduli = vec![(0, 0.0); n_list.len()];
            for (idx, (&n, s)) in n_list.iter().zip(&spins).enumerate().rev() {
                let half = PI / n as f64;
                let (best_k, best) = golden_max(|x| modulus(s, x), k - half, k + half, GOLDEN_ITERATIONS);
                if idx == n_list.len() - 1 {
                    k = best_k.rem_euclid(TAU);
                }
                moduli[idx] = (n, best);
            }
            peak_from(k, moduli, &bands)
        })
        .collect();

    // two grid maxima can refine onto the same peak
    let tol = PI / *n_list.last().unwrap() as f64;
    let mut kept: Vec<BraggPeak> = Vec::with_capacity(peaks.len());
    peaks.sort_by(|a, b| b.intensity.total_cmp(&a.intensity));
    for p in peaks {
        let dup = kept.iter().any(|q| {
            let d = (p.k - q.k).abs();
            d.min(TAU - d) < tol
        });
        if !dup {
            kept.push(p);
        }
    }

    Ok(BraggReport {
        system: system.to_string(),
        n_list: n_list.to_vec(),
        grid_size,
        bands,
        peaks: kept,
        note: NOTE.into(),
    })
}

/// Scaling fit at fixed wavenumbers, with no peak search or refinement.
pub fn bragg_probe<G>(
    system: &str,
    generator: G,
    n_list: &[usize],
    wavenumbers: &[f64],
    bands: ClassificationBands,
) -> Result<BraggReport>
where
    G: Fn(usize) -> Result<SequenceWindow>,
{
    check_sizes(n_list)?;
    let spins = windows(&generator, n_list)?;
    let peaks = wavenumbers
        .par_iter()
        .map(|&k| {
            let moduli = n_list
                .iter()
                .zip(&spins)
                .map(|(&n, s)| (n, modulus(s, k)))
                .collect();
            peak_from(k, moduli, &bands)
        })
        .collect();
    Ok(BraggReport {
        system: system.to_string(),
        n_list: n_list.to_vec(),
        grid_size: 0,
        bands,
        peaks,
        note: NOTE.into(),
    })
}

/// `count` probe wavenumbers: the first half on the dyadic grid 2πj/(count/2),
/// the second half a Weyl sequence k_j = 2π·frac((j + ½)·φ) with φ the
/// golden mean, which avoids every rational multiple of 2π.
pub fn dyadic_and_generic_probes(count: usize) -> Vec<f64> {
    let half = count / 2;
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let dyadic = (0..half).map(|j| TAU * j as f64 / half as f64);
    let generic = (0..count - half).map(|j| TAU * ((j as f64 + 0.5) * phi).fract());
    dyadic.chain(generic).collect()
}
