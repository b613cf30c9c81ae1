use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::distribution::overlap;
use super::sampler::ReplicaSampler;
use crate::error::{invalid, Result};
use crate::seeds::derive;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UltrametricityReport {
    pub triples: usize,
    pub epsilon: f64,
    pub violations: usize,
    pub violation_fraction: f64,
    /// Largest gap between the two smallest overlaps of a triple.
    pub max_violation: f64,
}

/// A triple violates ultrametricity when its two smallest overlaps differ
/// by more than `epsilon`.
pub fn ultrametricity_from_triples(triples: &[[f64; 3]], epsilon: f64) -> Result<UltrametricityReport> {
    if triples.is_empty() {
        return Err(invalid("triples", "need at least one triple"));
    }
    let mut violations = 0;
    let mut max_violation = 0.0f64;
    for t in triples {
        let mut q = *t;
        q.sort_by(f64::total_cmp);
        let gap = q[1] - q[0];
        max_violation = max_violation.max(gap);
        if gap > epsilon {
            violations += 1;
        }
    }
    Ok(UltrametricityReport {
        triples: triples.len(),
        epsilon,
        violations,
        violation_fraction: violations as f64 / triples.len() as f64,
        max_violation,
    })
}

/// Overlaps (q₁₂, q₁₃, q₂₃) for `count` independent replica triples; triple
/// `i` uses seeds `derive(master, 3i + j)`.
pub fn sample_triples(sampler: &dyn ReplicaSampler, count: usize, master_seed: u64) -> Result<Vec<[f64; 3]>> {
    (0..count)
        .into_par_iter()
        .map(|i| {
            let draw = |j: u64| sampler.draw(derive(master_seed, 3 * i as u64 + j));
            let (a, b, c) = (draw(0)?, draw(1)?, draw(2)?);
            Ok([overlap(&a, &b)?, overlap(&a, &c)?, overlap(&b, &c)?])
        })
        .collect()
}

pub fn ultrametricity_test(
    sampler: &dyn ReplicaSampler,
    triples: usize,
    epsilon: f64,
    master_seed: u64,
) -> Result<UltrametricityReport> {
    if triples == 0 {
        return Err(invalid("triples", "must be at least 1"));
    }
    ultrametricity_from_triples(&sample_triples(sampler, triples, master_seed)?, epsilon)
}

/// Negative control: every pairwise overlap independent and uniform on
/// [−half_width, half_width].
pub fn synthetic_uniform_triples(count: usize, half_width: f64, seed: u64) -> Vec<[f64; 3]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| std::array::from_fn(|_| rng.gen_range(-half_width..=half_width)))
        .collect()
}
