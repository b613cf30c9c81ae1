use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use super::fourier::fourier_sum;
use crate::correlation::ObservableSpec;
use crate::error::{invalid, Result};
use crate::symbolic::SequenceWindow;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenvalueReport {
    pub theta: f64,
    pub modulus: f64,
    pub observable: String,
    pub n: usize,
}

/// |(1/M) Σ_n f(block at n) e^{−2πiθn}| over the M = N − w + 1 block
/// positions. A modulus that stays away from 0 as N grows marks θ as a
/// candidate eigenvalue of the translation action.
pub fn dynamical_eigenvalue(
    window: &SequenceWindow,
    obs: &ObservableSpec,
    theta: f64,
) -> Result<EigenvalueReport> {
    if !theta.is_finite() {
        return Err(invalid("theta", "must be finite"));
    }
    let values = obs.evaluate(window)?;
    let theta = theta.rem_euclid(1.0);
    let modulus = fourier_sum(&values, TAU * theta).norm() / values.len() as f64;
    Ok(EigenvalueReport {
        theta,
        modulus,
        observable: obs.name().to_string(),
        n: window.len(),
    })
}
