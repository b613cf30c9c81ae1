//! Random dimers of `+−` or `−+` type on even or odd bonds.
//!
//! Letters record the position inside the dimer as well as the spin:
//! `[+` and `-]` make up a `+−` dimer, `[-` and `+]` a `−+` dimer. The spin
//! configuration is the factor through the spin map; the dimer location is
//! the 1-block factor "first site or not".

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::alphabet::Alphabet;
use super::window::{GeneratorSpec, SequenceWindow};
use crate::error::{invalid, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    /// Dimers on [2n, 2n+1].
    Even,
    /// Dimers on [2n−1, 2n].
    Odd,
}

impl Parity {
    pub fn other(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DimerParams {
    pub parity: Parity,
    pub seed: u64,
}

pub const FIRST_PLUS: u8 = 0;
pub const SECOND_MINUS: u8 = 1;
pub const FIRST_MINUS: u8 = 2;
pub const SECOND_PLUS: u8 = 3;

pub fn dimer_alphabet() -> Alphabet {
    Alphabet::with_spins(["[+", "-]", "[-", "+]"], vec![1.0, -1.0, -1.0, 1.0])
        .expect("static alphabet")
}

/// Sites 0..N−1. With odd parity the first and last entries belong to
/// dimers that straddle the window edge.
pub fn dimer_sample(params: &DimerParams, n: usize) -> Result<SequenceWindow> {
    if n == 0 || n % 2 != 0 {
        return Err(invalid("N", format!("dimer windows need an even length, got {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut symbols = Vec::with_capacity(n);
    let mut push_dimer = |symbols: &mut Vec<u8>| {
        if rng.gen::<bool>() {
            symbols.extend_from_slice(&[FIRST_PLUS, SECOND_MINUS]);
        } else {
            symbols.extend_from_slice(&[FIRST_MINUS, SECOND_PLUS]);
        }
    };
    match params.parity {
        Parity::Even => {
            while symbols.len() < n {
                push_dimer(&mut symbols);
            }
        }
        Parity::Odd => {
            // dimer on [−1, 0]: keep only its second half
            let mut edge = Vec::with_capacity(2);
            push_dimer(&mut edge);
            symbols.push(edge[1]);
            while symbols.len() < n {
                push_dimer(&mut symbols);
            }
            symbols.truncate(n);
        }
    }
    Ok(SequenceWindow::from_parts(
        symbols,
        dimer_alphabet(),
        0,
        GeneratorSpec::Dimer {
            params: *params,
            len: n,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn even_blocks_are_antiparallel() {
        let w = dimer_sample(&DimerParams { parity: Parity::Even, seed: 3 }, 1000).unwrap();
        let s = w.spins().unwrap();
        for pair in s.chunks(2) {
            assert_eq!(pair[0] * pair[1], -1.0);
        }
    }

    #[test]
    fn odd_blocks_are_antiparallel() {
        let w = dimer_sample(&DimerParams { parity: Parity::Odd, seed: 3 }, 1000).unwrap();
        let s = w.spins().unwrap();
        for i in (1..999).step_by(2) {
            assert_eq!(s[i] * s[i + 1], -1.0);
        }
        assert!(matches!(w.symbols()[0], SECOND_MINUS | SECOND_PLUS));
        assert!(matches!(w.symbols()[999], FIRST_MINUS | FIRST_PLUS));
    }

    #[test]
    fn odd_length_rejected() {
        assert!(dimer_sample(&DimerParams { parity: Parity::Even, seed: 0 }, 7).is_err());
        assert!(dimer_sample(&DimerParams { parity: Parity::Even, seed: 0 }, 0).is_err());
    }

    #[test]
    fn mean_is_small() {
        let n = 1_000_000;
        let w = dimer_sample(&DimerParams { parity: Parity::Even, seed: 11 }, n).unwrap();
        let mean = w.spins().unwrap().iter().sum::<f64>() / n as f64;
        // every block sums to zero
        assert_eq!(mean, 0.0);
        assert!(mean.abs() <= 3.0 / (n as f64 / 2.0).sqrt());
    }

    #[test]
    fn lag_two_correlation_vanishes() {
        let n = 1_000_000;
        let w = dimer_sample(&DimerParams { parity: Parity::Even, seed: 5 }, n).unwrap();
        let s = w.spins().unwrap();
        let g2 = (0..n - 2).map(|i| s[i] * s[i + 2]).sum::<f64>() / (n - 2) as f64;
        assert!(g2.abs() <= 3.0 / (n as f64).sqrt(), "gamma(2) = {g2}");
    }
}
