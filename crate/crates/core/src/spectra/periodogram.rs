use std::f64::consts::TAU;

use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::symbolic::{GeneratorSpec, SequenceWindow};

/// Periodogram on the grid k_j = 2πj/M.
///
/// `per_site[j] = |Σ_n σ_n e^{−ik_j n}|² / N`; its grid mean equals γ(0).
/// A Bragg atom of weight w shows up as roughly `w·N` in `per_site`, and
/// as `w` in [`SpectralEstimate::atom`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralEstimate {
    pub n: usize,
    pub grid_size: usize,
    pub per_site: Vec<f64>,
    /// Set when the grid is coarser than N/4 points.
    pub coarse_grid: bool,
    pub provenance: GeneratorSpec,
}

impl SpectralEstimate {
    pub fn k(&self, j: usize) -> f64 {
        TAU * j as f64 / self.grid_size as f64
    }

    pub fn k_grid(&self) -> Vec<f64> {
        (0..self.grid_size).map(|j| self.k(j)).collect()
    }

    /// |c_N(k_j)|², the atom-normalized intensity.
    pub fn atom(&self, j: usize) -> f64 {
        self.per_site[j] / self.n as f64
    }

    pub fn plancherel_mean(&self) -> f64 {
        self.per_site.iter().sum::<f64>() / self.grid_size as f64
    }

    /// Averages over consecutive bands of `bandwidth` bins, as
    /// (band-center wavenumber, mean per-site intensity).
    pub fn band_averages(&self, bandwidth: usize) -> Result<Vec<(f64, f64)>> {
        if bandwidth == 0 || self.grid_size % bandwidth != 0 {
            return Err(invalid(
                "bandwidth",
                format!("{bandwidth} does not divide the grid size {}", self.grid_size),
            ));
        }
        Ok(self
            .per_site
            .chunks(bandwidth)
            .enumerate()
            .map(|(b, chunk)| {
                let center = TAU * (b as f64 * bandwidth as f64 + (bandwidth as f64 - 1.0) / 2.0)
                    / self.grid_size as f64;
                (center, chunk.iter().sum::<f64>() / bandwidth as f64)
            })
            .collect())
    }

    /// Grid indices of the `top_m` highest local maxima, at least
    /// `separation` bins apart (circularly).
    pub fn peaks(&self, top_m: usize, separation: usize) -> Vec<usize> {
        let m = self.grid_size;
        let v = &self.per_site;
        let mut candidates: Vec<usize> = (0..m)
            .filter(|&j| {
                if m < 3 {
                    return true;
                }
                let l = v[(j + m - 1) % m];
                let r = v[(j + 1) % m];
                v[j] >= l && v[j] >= r && v[j] > 0.0
            })
            .collect();
        candidates.sort_by(|&a, &b| v[b].total_cmp(&v[a]).then(a.cmp(&b)));
        let mut chosen: Vec<usize> = Vec::new();
        for j in candidates {
            if chosen.len() == top_m {
                break;
            }
            let far = chosen.iter().all(|&c| {
                let d = j.abs_diff(c);
                d.min(m - d) > separation
            });
            if far {
                chosen.push(j);
            }
        }
        chosen
    }
}

/// Zero-padded (or, when M < N, folded) FFT periodogram on M = `grid_size`
/// points.
pub fn periodogram(window: &SequenceWindow, grid_size: usize) -> Result<SpectralEstimate> {
    if grid_size == 0 {
        return Err(invalid("grid_size", "must be at least 1"));
    }
    let spins = window.spins()?;
    let n = spins.len();
    let mut buf = vec![Complex64::new(0.0, 0.0); grid_size];
    for (i, &s) in spins.iter().enumerate() {
        buf[i % grid_size].re += s;
    }
    FftPlanner::<f64>::new()
        .plan_fft_forward(grid_size)
        .process(&mut buf);
    // real input: mirror the upper half so intensity(k) = intensity(2π − k) exactly
    let mut per_site = vec![0.0; grid_size];
    for j in 0..=grid_size / 2 {
        let v = buf[j].norm_sqr() / n as f64;
        per_site[j] = v;
        per_site[(grid_size - j) % grid_size] = v;
    }
    Ok(SpectralEstimate {
        n,
        grid_size,
        per_site,
        coarse_grid: grid_size < n / 4,
        provenance: window.provenance().clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::fourier::{fourier_bohr, fourier_sum_bin};
    use crate::symbolic::{iterate_substitution, periodic, Alphabet, SubstitutionSystem};

    #[test]
    fn alternating_is_a_pure_tone() {
        let w = periodic(Alphabet::plus_minus(), &[0, 1], 1024).unwrap();
        let p = periodogram(&w, 1024).unwrap();
        let total: f64 = p.per_site.iter().sum();
        assert!((p.per_site[512] - 1024.0).abs() < 1e-9);
        assert!((p.per_site[512] / total - 1.0).abs() < 1e-12);
        assert!((p.atom(512) - 1.0).abs() < 1e-12);
        assert_eq!(p.peaks(1, 1), vec![512]);
    }

    #[test]
    fn plancherel_and_symmetry() {
        let w = iterate_substitution(&SubstitutionSystem::fibonacci(), &[0], 3000).unwrap();
        for grid in [4096, 8192, 3000, 500] {
            let p = periodogram(&w, grid).unwrap();
            if grid >= 3000 {
                assert!((p.plancherel_mean() - 1.0).abs() < 1e-6, "grid {grid}");
            }
            for j in 1..grid {
                assert_eq!(p.per_site[j], p.per_site[grid - j]);
            }
        }
        assert!(periodogram(&w, 500).unwrap().coarse_grid);
        assert!(!periodogram(&w, 4096).unwrap().coarse_grid);
    }

    #[test]
    fn direct_and_fft_agree_on_grid() {
        let w = iterate_substitution(&SubstitutionSystem::thue_morse(), &[0], 1 << 14).unwrap();
        let s = w.spins().unwrap();
        let p = periodogram(&w, 1 << 15).unwrap();
        for j in [0usize, 1, 3, 100, 5461, 10923, 16384, 30000] {
            let c = fourier_bohr(&w, p.k(j)).unwrap();
            assert!((c.norm_sqr() - p.atom(j)).abs() < 1e-10, "bin {j}");
            let exact = fourier_sum_bin(&s, j, 1 << 15) / s.len() as f64;
            assert!((exact.norm_sqr() - p.atom(j)).abs() < 1e-12, "bin {j}");
        }
    }

    #[test]
    fn band_average_validation() {
        let w = periodic(Alphabet::plus_minus(), &[0, 1], 64).unwrap();
        let p = periodogram(&w, 64).unwrap();
        assert!(p.band_averages(3).is_err());
        let bands = p.band_averages(16).unwrap();
        assert_eq!(bands.len(), 4);
        let mean: f64 = bands.iter().map(|b| b.1).sum::<f64>() / 4.0;
        assert!((mean - p.plancherel_mean()).abs() < 1e-12);
    }
}
