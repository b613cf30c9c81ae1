//! Rudin–Shapiro, paperfolding, i.i.d. and periodic generators.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::alphabet::Alphabet;
use super::window::{GeneratorSpec, SequenceWindow};
use crate::error::{invalid, Result};

fn require_len(len: usize) -> Result<()> {
    if len == 0 {
        Err(invalid("N", "must be at least 1"))
    } else {
        Ok(())
    }
}

/// Rudin–Shapiro sign of `n`: −1 to the number of (possibly overlapping)
/// `11` blocks in the binary expansion.
pub fn rudin_shapiro_sign(n: u64) -> i8 {
    if (n & (n >> 1)).count_ones() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Symbols `+` (0) and `-` (1).
pub fn rudin_shapiro_range(start: u64, len: usize) -> Result<SequenceWindow> {
    require_len(len)?;
    let symbols = (start..start + len as u64)
        .map(|n| u8::from(rudin_shapiro_sign(n) < 0))
        .collect();
    Ok(SequenceWindow::from_parts(
        symbols,
        Alphabet::plus_minus(),
        start as i64,
        GeneratorSpec::RudinShapiro { start, len },
    ))
}

pub fn rudin_shapiro(len: usize) -> Result<SequenceWindow> {
    rudin_shapiro_range(0, len)
}

/// Regular paperfolding term for n ≥ 1: with n = 2^k·m, m odd, the term is
/// 1 when m ≡ 1 (mod 4).
pub fn paperfolding_term(n: u64) -> u8 {
    debug_assert!(n >= 1);
    let odd = n >> n.trailing_zeros();
    u8::from(odd % 4 == 1)
}

pub fn paperfolding_alphabet() -> Alphabet {
    Alphabet::with_spins(["0", "1"], vec![-1.0, 1.0]).expect("static alphabet")
}

/// Window entry `i` holds the term with index `start + i + 1`.
pub fn paperfolding_range(start: u64, len: usize) -> Result<SequenceWindow> {
    require_len(len)?;
    let symbols = (start + 1..=start + len as u64).map(paperfolding_term).collect();
    Ok(SequenceWindow::from_parts(
        symbols,
        paperfolding_alphabet(),
        start as i64,
        GeneratorSpec::Paperfolding { start, len },
    ))
}

pub fn paperfolding(len: usize) -> Result<SequenceWindow> {
    paperfolding_range(0, len)
}

/// Independent uniform symbols.
pub fn iid_sample(alphabet: Alphabet, seed: u64, len: usize) -> Result<SequenceWindow> {
    require_len(len)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = alphabet.len() as u8;
    let symbols = (0..len).map(|_| rng.gen_range(0..k)).collect();
    Ok(SequenceWindow::from_parts(
        symbols,
        alphabet.clone(),
        0,
        GeneratorSpec::Iid {
            alphabet,
            seed,
            len,
        },
    ))
}

pub fn periodic(alphabet: Alphabet, pattern: &[u8], len: usize) -> Result<SequenceWindow> {
    require_len(len)?;
    if pattern.is_empty() {
        return Err(invalid("pattern", "must be nonempty"));
    }
    let symbols: Vec<u8> = pattern.iter().copied().cycle().take(len).collect();
    SequenceWindow::new(
        symbols,
        alphabet.clone(),
        0,
        GeneratorSpec::Periodic {
            alphabet,
            pattern: pattern.to_vec(),
            len,
        },
    )
}
