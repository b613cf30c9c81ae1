use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite single-site space. Symbols are stored as their index into
/// `symbols`; `spin_map` gives the numeric value used by spectral and
/// overlap code.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "AlphabetRepr", into = "AlphabetRepr")]
pub struct Alphabet {
    symbols: Vec<String>,
    spin_map: Option<Vec<f64>>,
}

#[derive(Serialize, Deserialize)]
struct AlphabetRepr {
    symbols: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    spin_map: Option<Vec<f64>>,
}

impl TryFrom<AlphabetRepr> for Alphabet {
    type Error = Error;

    fn try_from(r: AlphabetRepr) -> Result<Self> {
        match r.spin_map {
            Some(spins) => Alphabet::with_spins(r.symbols, spins),
            None => Alphabet::new(r.symbols),
        }
    }
}

impl From<Alphabet> for AlphabetRepr {
    fn from(a: Alphabet) -> Self {
        AlphabetRepr {
            symbols: a.symbols,
            spin_map: a.spin_map,
        }
    }
}

impl Alphabet {
    pub fn new<S: Into<String>>(symbols: impl IntoIterator<Item = S>) -> Result<Self> {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.len() < 2 {
            return Err(Error::InvalidAlphabet(format!(
                "need at least 2 symbols, got {}",
                symbols.len()
            )));
        }
        if symbols.len() > u8::MAX as usize + 1 {
            return Err(Error::InvalidAlphabet("more than 256 symbols".into()));
        }
        for (i, s) in symbols.iter().enumerate() {
            if symbols[..i].contains(s) {
                return Err(Error::InvalidAlphabet(format!("duplicate symbol {s:?}")));
            }
        }
        Ok(Alphabet {
            symbols,
            spin_map: None,
        })
    }

    pub fn with_spins<S: Into<String>>(
        symbols: impl IntoIterator<Item = S>,
        spins: Vec<f64>,
    ) -> Result<Self> {
        let mut a = Alphabet::new(symbols)?;
        if spins.len() != a.symbols.len() {
            return Err(Error::InvalidAlphabet(format!(
                "spin map covers {} of {} symbols",
                spins.len(),
                a.symbols.len()
            )));
        }
        if spins.iter().any(|s| !s.is_finite()) {
            return Err(Error::InvalidAlphabet("spin values must be finite".into()));
        }
        a.spin_map = Some(spins);
        Ok(a)
    }

    /// `+` / `-` with the obvious spin values.
    pub fn plus_minus() -> Self {
        Alphabet::with_spins(["+", "-"], vec![1.0, -1.0]).expect("static alphabet")
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn label(&self, symbol: u8) -> &str {
        &self.symbols[symbol as usize]
    }

    pub fn index_of(&self, label: &str) -> Option<u8> {
        self.symbols.iter().position(|s| s == label).map(|i| i as u8)
    }

    pub fn spin_map(&self) -> Option<&[f64]> {
        self.spin_map.as_deref()
    }

    pub fn spin(&self, symbol: u8) -> Option<f64> {
        self.spin_map.as_ref().map(|m| m[symbol as usize])
    }

    /// Parse a word written as one label per character (only valid when all
    /// labels are single characters) or as labels separated by commas.
    pub fn parse_word(&self, word: &str) -> Result<Vec<u8>> {
        let lookup = |label: &str| {
            self.index_of(label).ok_or_else(|| {
                Error::InvalidAlphabet(format!("unknown symbol {label:?} in {word:?}"))
            })
        };
        if word.contains(',') {
            word.split(',').map(|l| lookup(l.trim())).collect()
        } else {
            word.chars()
                .map(|c| lookup(c.encode_utf8(&mut [0; 4])))
                .collect()
        }
    }

    pub fn render(&self, word: &[u8]) -> String {
        let single = self.symbols.iter().all(|s| s.chars().count() == 1);
        let labels = word.iter().map(|&s| self.label(s));
        if single {
            labels.collect()
        } else {
            labels.collect::<Vec<_>>().join(",")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_degenerate_alphabets() {
        assert!(Alphabet::new(["a"]).is_err());
        assert!(Alphabet::new(["a", "a"]).is_err());
        assert!(Alphabet::with_spins(["a", "b"], vec![1.0]).is_err());
    }

    #[test]
    fn parse_and_render() {
        let a = Alphabet::new(["a", "b"]).unwrap();
        let w = a.parse_word("abba").unwrap();
        assert_eq!(w, vec![0, 1, 1, 0]);
        assert_eq!(a.render(&w), "abba");
        assert!(a.parse_word("abc").is_err());

        let long = Alphabet::new(["up", "down"]).unwrap();
        let w = long.parse_word("up,down,up").unwrap();
        assert_eq!(long.render(&w), "up,down,up");
    }

    #[test]
    fn serde_validates() {
        let bad = r#"{"symbols":["x","x"]}"#;
        assert!(serde_json::from_str::<Alphabet>(bad).is_err());
        let ok: Alphabet = serde_json::from_str(r#"{"symbols":["x","y"],"spin_map":[1,-1]}"#).unwrap();
        assert_eq!(ok.spin(1), Some(-1.0));
    }
}
