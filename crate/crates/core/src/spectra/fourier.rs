use std::f64::consts::TAU;

use rustfft::num_complex::Complex64;

use crate::error::Result;
use crate::symbolic::SequenceWindow;

const BLOCK: usize = 256;

/// Σ_n v_n e^{−ikn}, n counted from the start of the slice.
///
/// Phases are rebuilt per block of 256 terms from `sin_cos`, so there is no
/// drift from a running phasor.
pub fn fourier_sum(values: &[f64], k: f64) -> Complex64 {
    let inner: Vec<Complex64> = (0..BLOCK.min(values.len()))
        .map(|j| Complex64::from_polar(1.0, -k * j as f64))
        .collect();
    let mut total = Complex64::new(0.0, 0.0);
    for (b, chunk) in values.chunks(BLOCK).enumerate() {
        let (mut re, mut im) = (0.0, 0.0);
        for (v, z) in chunk.iter().zip(&inner) {
            re += v * z.re;
            im += v * z.im;
        }
        let outer = Complex64::from_polar(1.0, -k * (b * BLOCK) as f64);
        total += outer * Complex64::new(re, im);
    }
    total
}

/// Σ_n v_n e^{−2πi·jn/m} with the phase reduced exactly in integers.
pub fn fourier_sum_bin(values: &[f64], j: usize, m: usize) -> Complex64 {
    let j = (j % m) as u128;
    let m128 = m as u128;
    let mut total = Complex64::new(0.0, 0.0);
    for (n, &v) in values.iter().enumerate() {
        let r = (j * n as u128) % m128;
        total += v * Complex64::from_polar(1.0, -TAU * r as f64 / m as f64);
    }
    total
}

/// c_N(k) = (1/N) Σ_n σ_n e^{−ikn}.
pub fn fourier_bohr(window: &SequenceWindow, k: f64) -> Result<Complex64> {
    let spins = window.spins()?;
    Ok(fourier_sum(&spins, k) / spins.len() as f64)
}

/// |c_N(k)| from precomputed spins.
pub(crate) fn modulus(spins: &[f64], k: f64) -> f64 {
    fourier_sum(spins, k).norm() / spins.len() as f64
}

/// Maximize `f` on `[lo, hi]` by golden-section search; returns the best
/// point seen (endpoints and midpoint included).
pub(crate) fn golden_max(f: impl Fn(f64) -> f64, lo: f64, hi: f64, iterations: usize) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut best = [lo, hi, 0.5 * (lo + hi)]
        .into_iter()
        .map(|x| (x, f(x)))
        .fold((lo, f64::NEG_INFINITY), |a, b| if b.1 > a.1 { b } else { a });
    let (mut a, mut b) = (lo, hi);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..iterations {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
        for (x, fx) in [(c, fc), (d, fd)] {
            if fx > best.1 {
                best = (x, fx);
            }
        }
    }
    best
}
