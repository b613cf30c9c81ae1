use serde::{Deserialize, Serialize};

use super::alphabet::Alphabet;
use super::window::{GeneratorSpec, SequenceWindow};
use crate::error::{invalid, Error, Result};

/// A substitution (morphism) on a finite alphabet.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SubstitutionRepr", into = "SubstitutionRepr")]
pub struct SubstitutionSystem {
    name: String,
    alphabet: Alphabet,
    rules: Vec<Vec<u8>>,
}

#[derive(Serialize, Deserialize)]
struct SubstitutionRepr {
    name: String,
    alphabet: Alphabet,
    rules: Vec<Vec<u8>>,
}

impl TryFrom<SubstitutionRepr> for SubstitutionSystem {
    type Error = Error;
    fn try_from(r: SubstitutionRepr) -> Result<Self> {
        SubstitutionSystem::new(r.name, r.alphabet, r.rules)
    }
}

impl From<SubstitutionSystem> for SubstitutionRepr {
    fn from(s: SubstitutionSystem) -> Self {
        SubstitutionRepr {
            name: s.name,
            alphabet: s.alphabet,
            rules: s.rules,
        }
    }
}

impl SubstitutionSystem {
    pub fn new(name: impl Into<String>, alphabet: Alphabet, rules: Vec<Vec<u8>>) -> Result<Self> {
        if rules.len() != alphabet.len() {
            return Err(invalid(
                "rules",
                format!("{} rules for {} symbols", rules.len(), alphabet.len()),
            ));
        }
        for (i, image) in rules.iter().enumerate() {
            if image.is_empty() {
                return Err(invalid(
                    "rules",
                    format!("image of {:?} is empty", alphabet.label(i as u8)),
                ));
            }
            if image.iter().any(|&s| s as usize >= alphabet.len()) {
                return Err(invalid(
                    "rules",
                    format!("image of {:?} leaves the alphabet", alphabet.label(i as u8)),
                ));
            }
        }
        Ok(SubstitutionSystem {
            name: name.into(),
            alphabet,
            rules,
        })
    }

    /// Build from label strings, e.g. `[("a", "ab"), ("b", "a")]`.
    pub fn from_rules(name: &str, alphabet: Alphabet, rules: &[(&str, &str)]) -> Result<Self> {
        let mut images = vec![Vec::new(); alphabet.len()];
        for (from, to) in rules {
            let idx = alphabet
                .index_of(from)
                .ok_or_else(|| invalid("rules", format!("unknown symbol {from:?}")))?;
            images[idx as usize] = alphabet.parse_word(to)?;
        }
        SubstitutionSystem::new(name, alphabet, images)
    }

    fn builtin(name: &str, alphabet: Alphabet, rules: &[(&str, &str)]) -> Self {
        let s = SubstitutionSystem::from_rules(name, alphabet, rules).expect("static rules");
        assert!(s.is_primitive(), "built-in substitution {name} must be primitive");
        s
    }

    /// 0 -> 01, 1 -> 10; spins 0 = +1, 1 = -1.
    pub fn thue_morse() -> Self {
        let a = Alphabet::with_spins(["0", "1"], vec![1.0, -1.0]).unwrap();
        Self::builtin("thue-morse", a, &[("0", "01"), ("1", "10")])
    }

    /// a -> ab, b -> a; spins a = +1, b = -1.
    pub fn fibonacci() -> Self {
        let a = Alphabet::with_spins(["a", "b"], vec![1.0, -1.0]).unwrap();
        Self::builtin("fibonacci", a, &[("a", "ab"), ("b", "a")])
    }

    /// a -> ab, b -> aa; spins a = +1, b = -1.
    pub fn period_doubling() -> Self {
        let a = Alphabet::with_spins(["a", "b"], vec![1.0, -1.0]).unwrap();
        Self::builtin("period-doubling", a, &[("a", "ab"), ("b", "aa")])
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn image(&self, symbol: u8) -> &[u8] {
        &self.rules[symbol as usize]
    }

    /// Apply the substitution once, keeping at most `cap` symbols. The
    /// prefix of length `cap` of the image only depends on the prefix of
    /// length `cap` of the input because every image is nonempty.
    pub fn apply_capped(&self, word: &[u8], cap: usize) -> Vec<u8> {
        let mut out = Vec::with_capacity(cap.min(word.len() * 2));
        for &s in word {
            if out.len() >= cap {
                break;
            }
            out.extend_from_slice(&self.rules[s as usize]);
        }
        out.truncate(cap);
        out
    }

    /// Substitution matrix M[i][j] = occurrences of symbol i in the image of j.
    pub fn matrix(&self) -> Vec<Vec<u64>> {
        let k = self.alphabet.len();
        let mut m = vec![vec![0u64; k]; k];
        for (j, image) in self.rules.iter().enumerate() {
            for &i in image {
                m[i as usize][j] += 1;
            }
        }
        m
    }

    /// Some power of the matrix is strictly positive. Wielandt's bound
    /// (k-1)^2 + 1 caps the powers that need checking.
    pub fn is_primitive(&self) -> bool {
        let k = self.alphabet.len();
        let base: Vec<Vec<bool>> = self
            .matrix()
            .into_iter()
            .map(|row| row.into_iter().map(|x| x > 0).collect())
            .collect();
        let mut power = base.clone();
        for _ in 0..((k - 1) * (k - 1) + 1) {
            if power.iter().all(|row| row.iter().all(|&x| x)) {
                return true;
            }
            let mut next = vec![vec![false; k]; k];
            for i in 0..k {
                for j in 0..k {
                    next[i][j] = (0..k).any(|l| power[i][l] && base[l][j]);
                }
            }
            power = next;
        }
        false
    }
}

/// Prefix of length `target_len` of the limit word grown from `seed_word`.
///
/// The seed must reappear as a prefix of one of its images `σ^p(seed)`;
/// iterating `σ^p` then produces a prefix-increasing sequence, so the
/// result for a shorter target is always a prefix of the result for a
/// longer one.
pub fn iterate_substitution(
    system: &SubstitutionSystem,
    seed_word: &[u8],
    target_len: usize,
) -> Result<SequenceWindow> {
    if seed_word.is_empty() {
        return Err(invalid("seed_word", "must be nonempty"));
    }
    if target_len == 0 {
        return Err(invalid("target_len", "must be at least 1"));
    }
    if seed_word.iter().any(|&s| s as usize >= system.alphabet.len()) {
        return Err(invalid("seed_word", "symbol outside the alphabet"));
    }

    let max_power = 2 * system.alphabet.len() + 2;
    let seed_len = seed_word.len();
    let mut probe = seed_word.to_vec();
    let mut power = None;
    for p in 1..=max_power {
        probe = system.apply_capped(&probe, seed_len);
        if probe.len() >= seed_len && probe[..seed_len] == *seed_word {
            power = Some(p);
            break;
        }
    }
    let power =
        power.ok_or_else(|| Error::SeedNotPrefix(system.alphabet.render(seed_word)))?;

    let mut word = seed_word.to_vec();
    while word.len() < target_len {
        let mut next = word.clone();
        for _ in 0..power {
            next = system.apply_capped(&next, target_len);
        }
        if next.len() <= word.len() {
            return Err(Error::NonGrowing {
                reached: word.len(),
                target: target_len,
            });
        }
        word = next;
    }
    word.truncate(target_len);

    Ok(SequenceWindow::from_parts(
        word,
        system.alphabet.clone(),
        0,
        GeneratorSpec::Substitution {
            system: system.clone(),
            seed_word: seed_word.to_vec(),
            len: target_len,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grow(system: &SubstitutionSystem, seed: &str, n: usize) -> String {
        let seed = system.alphabet().parse_word(seed).unwrap();
        iterate_substitution(system, &seed, n).unwrap().render()
    }

    #[test]
    fn named_prefixes() {
        assert_eq!(grow(&SubstitutionSystem::thue_morse(), "0", 8), "01101001");
        assert_eq!(grow(&SubstitutionSystem::fibonacci(), "a", 5), "abaab");
        assert_eq!(grow(&SubstitutionSystem::period_doubling(), "a", 8), "abaaabab");
    }

    #[test]
    fn thue_morse_matches_digit_sum() {
        let w = iterate_substitution(&SubstitutionSystem::thue_morse(), &[0], 4096).unwrap();
        for (n, &s) in w.symbols().iter().enumerate() {
            assert_eq!(s as u32, (n as u32).count_ones() % 2, "n = {n}");
        }
    }

    #[test]
    fn builtins_are_primitive() {
        assert!(SubstitutionSystem::thue_morse().is_primitive());
        assert!(SubstitutionSystem::fibonacci().is_primitive());
        assert!(SubstitutionSystem::period_doubling().is_primitive());
        let a = Alphabet::new(["a", "b"]).unwrap();
        let reducible = SubstitutionSystem::from_rules("r", a, &[("a", "ab"), ("b", "b")]).unwrap();
        assert!(!reducible.is_primitive());
    }

    #[test]
    fn non_growing_is_an_error() {
        let a = Alphabet::new(["a", "b"]).unwrap();
        let swap = SubstitutionSystem::from_rules("swap", a.clone(), &[("a", "a"), ("b", "b")]).unwrap();
        assert!(matches!(
            iterate_substitution(&swap, &[0], 4),
            Err(Error::NonGrowing { reached: 1, target: 4 })
        ));
        // a seed that is already long enough needs no growth
        assert_eq!(iterate_substitution(&swap, &[0, 1, 0], 2).unwrap().symbols(), &[0, 1]);
    }

    #[test]
    fn seed_must_be_self_prefix() {
        let fib = SubstitutionSystem::fibonacci();
        assert!(matches!(
            iterate_substitution(&fib, &[1], 10),
            Err(Error::SeedNotPrefix(_))
        ));
        assert!(iterate_substitution(&fib, &[], 10).is_err());
        assert!(iterate_substitution(&fib, &[0], 0).is_err());
    }

    #[test]
    fn power_seeds() {
        // b -> a, a -> ab: "ab" reappears as a prefix of its first image "aba"
        let fib = SubstitutionSystem::fibonacci();
        assert_eq!(grow(&fib, "ab", 8), "abaababa");
        // Thue-Morse from 1 converges to the complement word
        assert_eq!(grow(&SubstitutionSystem::thue_morse(), "1", 8), "10010110");
    }
}
