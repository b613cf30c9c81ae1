use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::sampler::ReplicaSampler;
use crate::error::{invalid, Error, Result};
use crate::seeds::derive;
use crate::symbolic::SequenceWindow;

/// q = (1/N) Σ_i σ₁^i σ₂^i.
pub fn overlap(w1: &SequenceWindow, w2: &SequenceWindow) -> Result<f64> {
    if w1.len() != w2.len() {
        return Err(Error::LengthMismatch {
            left: w1.len(),
            right: w2.len(),
        });
    }
    let a = w1.spin_table()?;
    let b = w2.spin_table()?;
    let kb = b.len();
    let products: Vec<f64> = a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect();
    let sum: f64 = w1
        .symbols()
        .iter()
        .zip(w2.symbols())
        .map(|(&x, &y)| products[x as usize * kb + y as usize])
        .sum();
    Ok(sum / w1.len() as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OverlapSample {
    pub index: usize,
    pub q: f64,
    pub seed1: u64,
    pub seed2: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub location: f64,
    pub weight: f64,
}

/// Overlap samples, sorted for ECDF queries, plus the draw records.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalOverlapDistribution {
    sorted: Vec<f64>,
    records: Vec<OverlapSample>,
    n: usize,
}

impl EmpiricalOverlapDistribution {
    pub fn from_samples(samples: Vec<f64>, n: usize) -> Result<Self> {
        let records = samples
            .iter()
            .enumerate()
            .map(|(index, &q)| OverlapSample {
                index,
                q,
                seed1: 0,
                seed2: 0,
            })
            .collect();
        Self::from_records(records, n)
    }

    pub fn from_records(records: Vec<OverlapSample>, n: usize) -> Result<Self> {
        if records.is_empty() {
            return Err(invalid("M", "need at least one sample"));
        }
        if records.iter().any(|r| !(-1.0..=1.0).contains(&r.q)) {
            return Err(invalid("samples", "overlaps must lie in [-1, 1]"));
        }
        let mut sorted: Vec<f64> = records.iter().map(|r| r.q).collect();
        sorted.sort_by(f64::total_cmp);
        Ok(EmpiricalOverlapDistribution { sorted, records, n })
    }

    pub fn sorted(&self) -> &[f64] {
        &self.sorted
    }

    pub fn records(&self) -> &[OverlapSample] {
        &self.records
    }

    pub fn m(&self) -> usize {
        self.sorted.len()
    }

    pub fn window_len(&self) -> usize {
        self.n
    }

    /// Fraction of samples ≤ q.
    pub fn ecdf(&self, q: f64) -> f64 {
        self.sorted.partition_point(|&x| x <= q) as f64 / self.m() as f64
    }

    pub fn mean(&self) -> f64 {
        self.sorted.iter().sum::<f64>() / self.m() as f64
    }

    /// Sample standard deviation (M − 1 denominator).
    pub fn std_dev(&self) -> f64 {
        let m = self.m() as f64;
        if self.m() < 2 {
            return 0.0;
        }
        let mean = self.mean();
        (self.sorted.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (m - 1.0)).sqrt()
    }

    /// Two-sample Kolmogorov–Smirnov statistic sup_q |F₁(q) − F₂(q)|.
    pub fn ks_distance(&self, other: &EmpiricalOverlapDistribution) -> f64 {
        let (a, b) = (&self.sorted, &other.sorted);
        let (na, nb) = (a.len() as f64, b.len() as f64);
        let (mut i, mut j, mut d) = (0usize, 0usize, 0.0f64);
        while i < a.len() && j < b.len() {
            let x = a[i].min(b[j]);
            while i < a.len() && a[i] <= x {
                i += 1;
            }
            while j < b.len() && b[j] <= x {
                j += 1;
            }
            d = d.max((i as f64 / na - j as f64 / nb).abs());
        }
        d
    }

    /// Greedy atom extraction: repeatedly take the width-`resolution`
    /// window holding the most remaining mass, report it as an atom if
    /// that mass is at least `min_weight`, and remove its samples.
    pub fn atom_scan(&self, resolution: f64, min_weight: f64) -> Vec<Atom> {
        let total = self.m() as f64;
        let mut remaining = self.sorted.clone();
        let mut atoms = Vec::new();
        while !remaining.is_empty() {
            let (mut best_i, mut best_len) = (0usize, 0usize);
            let mut j = 0usize;
            for i in 0..remaining.len() {
                if j < i {
                    j = i;
                }
                while j < remaining.len() && remaining[j] - remaining[i] <= resolution {
                    j += 1;
                }
                if j - i > best_len {
                    best_i = i;
                    best_len = j - i;
                }
            }
            let weight = best_len as f64 / total;
            if weight < min_weight || best_len == 0 {
                break;
            }
            let chunk = &remaining[best_i..best_i + best_len];
            let location = chunk.iter().sum::<f64>() / best_len as f64;
            atoms.push(Atom { location, weight });
            remaining.drain(best_i..best_i + best_len);
        }
        atoms
    }
}

/// M independent overlap samples. Pair `i` uses replica seeds
/// `derive(master, 2i)` and `derive(master, 2i + 1)`.
pub fn sample_overlap_distribution(
    sampler: &dyn ReplicaSampler,
    m: usize,
    master_seed: u64,
) -> Result<EmpiricalOverlapDistribution> {
    if m == 0 {
        return Err(invalid("M", "must be at least 1"));
    }
    let records = (0..m)
        .into_par_iter()
        .map(|index| {
            let seed1 = derive(master_seed, 2 * index as u64);
            let seed2 = derive(master_seed, 2 * index as u64 + 1);
            let q = overlap(&sampler.draw(seed1)?, &sampler.draw(seed2)?)?;
            Ok(OverlapSample {
                index,
                q,
                seed1,
                seed2,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    EmpiricalOverlapDistribution::from_records(records, sampler.window_len())
}
