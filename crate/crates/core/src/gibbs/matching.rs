use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::symbolic::{Alphabet, SequenceWindow};

/// Forbidden nearest-neighbor pairs, each costing `epsilon` when present.
/// `horizontal` pairs are (left, right); `vertical` pairs are (lower, upper)
/// and only apply to 2D arrays.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatchingRuleSpec {
    pub horizontal: Vec<(String, String)>,
    #[serde(default)]
    pub vertical: Vec<(String, String)>,
    pub epsilon: f64,
}

impl MatchingRuleSpec {
    pub fn forbid_1d<S: Into<String>>(pairs: impl IntoIterator<Item = (S, S)>, epsilon: f64) -> Self {
        MatchingRuleSpec {
            horizontal: pairs.into_iter().map(|(a, b)| (a.into(), b.into())).collect(),
            vertical: Vec::new(),
            epsilon,
        }
    }

    fn table(pairs: &[(String, String)], alphabet: &Alphabet) -> Result<Vec<bool>> {
        let k = alphabet.len();
        let mut t = vec![false; k * k];
        for (a, b) in pairs {
            let lookup = |l: &str| {
                alphabet.index_of(l).ok_or_else(|| {
                    Error::InvalidAlphabet(format!("{l:?} is not one of {:?}", alphabet.symbols()))
                })
            };
            t[lookup(a)? as usize * k + lookup(b)? as usize] = true;
        }
        Ok(t)
    }

    fn validate(&self) -> Result<()> {
        if !(self.epsilon.is_finite() && self.epsilon > 0.0) {
            return Err(invalid("epsilon", "violation energy must be positive"));
        }
        Ok(())
    }
}

/// A rectangular tiling, row-major with row 0 at the bottom.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TileArray {
    pub width: usize,
    pub height: usize,
    pub cells: Vec<u8>,
    pub alphabet: Alphabet,
}

/// (violations × ε) / (number of adjacencies) on a word.
pub fn matching_rule_energy(window: &SequenceWindow, rules: &MatchingRuleSpec) -> Result<f64> {
    rules.validate()?;
    if window.len() < 2 {
        return Err(invalid("window", "needs at least one adjacency"));
    }
    let k = window.alphabet().len();
    let bad = MatchingRuleSpec::table(&rules.horizontal, window.alphabet())?;
    let s = window.symbols();
    let violations = s.windows(2).filter(|p| bad[p[0] as usize * k + p[1] as usize]).count();
    Ok(violations as f64 / (s.len() - 1) as f64 * rules.epsilon)
}

/// The same density over the horizontal and vertical adjacencies of a
/// 2D array.
pub fn matching_rule_energy_2d(tiles: &TileArray, rules: &MatchingRuleSpec) -> Result<f64> {
    rules.validate()?;
    let (w, h) = (tiles.width, tiles.height);
    if tiles.cells.len() != w * h {
        return Err(Error::LengthMismatch {
            left: tiles.cells.len(),
            right: w * h,
        });
    }
    let adjacencies = h * w.saturating_sub(1) + w * h.saturating_sub(1);
    if adjacencies == 0 {
        return Err(invalid("tiles", "needs at least one adjacency"));
    }
    let k = tiles.alphabet.len();
    let hz = MatchingRuleSpec::table(&rules.horizontal, &tiles.alphabet)?;
    let vt = MatchingRuleSpec::table(&rules.vertical, &tiles.alphabet)?;
    let c = |x: usize, y: usize| tiles.cells[y * w + x] as usize;
    let mut violations = 0usize;
    for y in 0..h {
        for x in 0..w {
            if x + 1 < w && hz[c(x, y) * k + c(x + 1, y)] {
                violations += 1;
            }
            if y + 1 < h && vt[c(x, y) * k + c(x, y + 1)] {
                violations += 1;
            }
        }
    }
    Ok(violations as f64 / adjacencies as f64 * rules.epsilon)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::{periodic, System};

    #[test]
    fn fibonacci_and_all_b() {
        let rules = MatchingRuleSpec::forbid_1d([("b", "b")], 1.0);
        let fib = System::Fibonacci.window(10_000, None).unwrap();
        assert_eq!(matching_rule_energy(&fib, &rules).unwrap(), 0.0);
        let ab = Alphabet::new(["a", "b"]).unwrap();
        assert_eq!(matching_rule_energy(&periodic(ab.clone(), &[1], 50).unwrap(), &rules).unwrap(), 1.0);
        assert_eq!(matching_rule_energy(&periodic(ab, &[0, 1], 50).unwrap(), &rules).unwrap(), 0.0);
    }

    #[test]
    fn checkerboard_rules() {
        let alphabet = Alphabet::new(["x", "o"]).unwrap();
        let cells = (0..16).map(|i| (((i % 4) + (i / 4)) % 2) as u8).collect();
        let tiles = TileArray {
            width: 4,
            height: 4,
            cells,
            alphabet,
        };
        let same = MatchingRuleSpec {
            horizontal: vec![("x".into(), "x".into()), ("o".into(), "o".into())],
            vertical: vec![("x".into(), "x".into()), ("o".into(), "o".into())],
            epsilon: 2.0,
        };
        assert_eq!(matching_rule_energy_2d(&tiles, &same).unwrap(), 0.0);
        let differ = MatchingRuleSpec {
            horizontal: vec![("x".into(), "o".into()), ("o".into(), "x".into())],
            vertical: Vec::new(),
            epsilon: 2.0,
        };
        assert_eq!(matching_rule_energy_2d(&tiles, &differ).unwrap(), 1.0);
    }
}
