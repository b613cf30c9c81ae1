use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::window::SequenceWindow;
use crate::error::{invalid, Error, Result};

/// Number of distinct length-`n` factors of the window. Refuses `n > N/4`:
/// beyond that the window cannot be expected to show every factor.
pub fn word_complexity(window: &SequenceWindow, n: usize) -> Result<usize> {
    let len = window.len();
    let limit = len / 4;
    if n == 0 {
        return Err(invalid("n", "factor length must be at least 1"));
    }
    if n > limit {
        return Err(Error::Undersampled { n, limit, len });
    }
    Ok(count_factors(window.symbols(), window.alphabet().len(), n))
}

fn count_factors(s: &[u8], k: usize, n: usize) -> usize {
    let bits = usize::BITS - (k - 1).leading_zeros();
    if (bits as usize) * n <= 64 {
        let mask = if bits as usize * n == 64 {
            u64::MAX
        } else {
            (1u64 << (bits as usize * n)) - 1
        };
        let mut code = 0u64;
        for &c in &s[..n - 1] {
            code = (code << bits) | c as u64;
        }
        let mut codes: Vec<u64> = Vec::with_capacity(s.len() - n + 1);
        for &c in &s[n - 1..] {
            code = ((code << bits) | c as u64) & mask;
            codes.push(code);
        }
        codes.sort_unstable();
        codes.dedup();
        codes.len()
    } else {
        s.windows(n).collect::<HashSet<_>>().len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EntropyPoint {
    pub n: usize,
    pub complexity: usize,
    /// ln p(n) / n
    pub block_entropy: f64,
    /// running minimum of `block_entropy`; the topological entropy is the
    /// infimum because p is submultiplicative
    pub corrected: f64,
    /// ln p(n) − ln p(n−1), with p(0) = 1
    pub increment: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Trend {
    Decreasing,
    Flat,
    Increasing,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropyProfile {
    pub points: Vec<EntropyPoint>,
    /// Sign of the least-squares slope of `block_entropy` against n.
    pub trend: Trend,
    pub slope: f64,
}

/// Entropy proxy ln p(n)/n for n = 1..=n_max (natural log).
pub fn entropy_estimate(window: &SequenceWindow, n_max: usize) -> Result<EntropyProfile> {
    if n_max == 0 {
        return Err(invalid("n_max", "must be at least 1"));
    }
    let mut points = Vec::with_capacity(n_max);
    let mut corrected = f64::INFINITY;
    let mut prev_log = 0.0;
    for n in 1..=n_max {
        let p = word_complexity(window, n)?;
        let log_p = (p as f64).ln();
        let block_entropy = log_p / n as f64;
        corrected = corrected.min(block_entropy);
        points.push(EntropyPoint {
            n,
            complexity: p,
            block_entropy,
            corrected,
            increment: log_p - prev_log,
        });
        prev_log = log_p;
    }
    let slope = if points.len() < 2 {
        0.0
    } else {
        let m = points.len() as f64;
        let xbar = points.iter().map(|p| p.n as f64).sum::<f64>() / m;
        let ybar = points.iter().map(|p| p.block_entropy).sum::<f64>() / m;
        let sxy: f64 = points
            .iter()
            .map(|p| (p.n as f64 - xbar) * (p.block_entropy - ybar))
            .sum();
        let sxx: f64 = points.iter().map(|p| (p.n as f64 - xbar).powi(2)).sum();
        sxy / sxx
    };
    let trend = if slope < -1e-12 {
        Trend::Decreasing
    } else if slope > 1e-12 {
        Trend::Increasing
    } else {
        Trend::Flat
    };
    Ok(EntropyProfile {
        points,
        trend,
        slope,
    })
}
