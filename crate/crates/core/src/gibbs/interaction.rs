use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symbolic::Alphabet;

pub type Offset = [i32; 2];

/// One translation-covariant term: an energy table over the states at
/// `offsets`, applied at every anchor of the lattice. Table index is the
/// mixed-radix code of the states with the first offset most significant.
#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    offsets: Vec<Offset>,
    energies: Vec<f64>,
}

impl Term {
    pub fn new(offsets: Vec<Offset>, energies: Vec<f64>, q: usize) -> Result<Self> {
        if offsets.is_empty() {
            return Err(Error::Interaction("term support is empty".into()));
        }
        for (i, a) in offsets.iter().enumerate() {
            if offsets[..i].contains(a) {
                return Err(Error::Interaction(format!("offset {a:?} repeated in one term")));
            }
        }
        let size = (q as u128).checked_pow(offsets.len() as u32);
        if size != Some(energies.len() as u128) {
            return Err(Error::Interaction(format!(
                "table has {} entries, expected {q}^{}",
                energies.len(),
                offsets.len()
            )));
        }
        if energies.iter().any(|e| !e.is_finite()) {
            return Err(Error::Interaction("energies must be finite".into()));
        }
        Ok(Term { offsets, energies })
    }

    pub fn offsets(&self) -> &[Offset] {
        &self.offsets
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    /// sup |Φ_X|.
    pub fn norm(&self) -> f64 {
        self.energies.iter().fold(0.0, |m, e| m.max(e.abs()))
    }

    pub fn energy(&self, code: usize) -> f64 {
        self.energies[code]
    }

    /// Largest coordinate difference within the support.
    pub fn span(&self) -> usize {
        let mut span = 0;
        for axis in 0..2 {
            let lo = self.offsets.iter().map(|o| o[axis]).min().unwrap();
            let hi = self.offsets.iter().map(|o| o[axis]).max().unwrap();
            span = span.max((hi - lo) as usize);
        }
        span
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "lowercase")]
pub enum Decay {
    Power { exponent: f64 },
    Exponential { rate: f64 },
}

/// Pair energy Φ_{i,i+n} = −J(n) σ_i σ_{i+n} along the first axis, kept
/// for 1 ≤ n ≤ cutoff.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairTail {
    #[serde(flatten)]
    pub decay: Decay,
    pub amplitude: f64,
    pub cutoff: usize,
}

impl PairTail {
    pub fn coupling(&self, n: usize) -> f64 {
        let n = n as f64;
        match self.decay {
            Decay::Power { exponent } => self.amplitude * n.powf(-exponent),
            Decay::Exponential { rate } => self.amplitude * (-rate * n).exp(),
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = match self.decay {
            Decay::Power { exponent } => exponent.is_finite() && exponent > 0.0,
            Decay::Exponential { rate } => rate.is_finite() && rate > 0.0,
        };
        if !ok || !self.amplitude.is_finite() || self.cutoff == 0 {
            return Err(Error::Interaction(format!("invalid pair tail {self:?}")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "InteractionFile", into = "InteractionFile")]
pub struct InteractionSpec {
    dimension: u8,
    alphabet: Alphabet,
    terms: Vec<Term>,
    tail: Option<PairTail>,
}

impl InteractionSpec {
    pub fn new(dimension: u8, alphabet: Alphabet, terms: Vec<Term>, tail: Option<PairTail>) -> Result<Self> {
        if !(1..=2).contains(&dimension) {
            return Err(Error::Interaction(format!("dimension must be 1 or 2, got {dimension}")));
        }
        if terms.is_empty() && tail.is_none() {
            return Err(Error::Interaction("no terms".into()));
        }
        for t in &terms {
            if dimension == 1 && t.offsets.iter().any(|o| o[1] != 0) {
                return Err(Error::Interaction("1D terms must have zero second coordinate".into()));
            }
            if t.energies.len() != alphabet.len().pow(t.offsets.len() as u32) {
                return Err(Error::Interaction("term table does not match the alphabet".into()));
            }
        }
        if let Some(tail) = &tail {
            tail.validate()?;
            if alphabet.spin_map().is_none() {
                return Err(Error::Interaction("a pair tail needs numeric spins".into()));
            }
        }
        Ok(InteractionSpec {
            dimension,
            alphabet,
            terms,
            tail,
        })
    }

    /// Ising model on ℤ^d with ± spins: −J σ_xσ_y on nearest-neighbor
    /// bonds and −h σ_x on sites (omitted when h = 0).
    pub fn ising(dimension: u8, coupling: f64, field: f64) -> Result<Self> {
        let pair = vec![-coupling, coupling, coupling, -coupling];
        let mut terms = vec![Term::new(vec![[0, 0], [1, 0]], pair.clone(), 2)?];
        if dimension == 2 {
            terms.push(Term::new(vec![[0, 0], [0, 1]], pair, 2)?);
        }
        if field != 0.0 {
            terms.push(Term::new(vec![[0, 0]], vec![-field, field], 2)?);
        }
        Self::new(dimension, Alphabet::plus_minus(), terms, None)
    }

    /// A pure pair tail with ± spins in one dimension.
    pub fn pair_tail(tail: PairTail) -> Result<Self> {
        Self::new(1, Alphabet::plus_minus(), Vec::new(), Some(tail))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn dimension(&self) -> u8 {
        self.dimension
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn q(&self) -> usize {
        self.alphabet.len()
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn tail(&self) -> Option<&PairTail> {
        self.tail.as_ref()
    }

    /// Finite terms followed by the tail expanded into explicit pair terms.
    pub fn compiled_terms(&self) -> Vec<Term> {
        let mut out = self.terms.clone();
        if let (Some(tail), Some(spins)) = (&self.tail, self.alphabet.spin_map()) {
            for n in 1..=tail.cutoff {
                let j = tail.coupling(n);
                let energies = spins
                    .iter()
                    .flat_map(|a| spins.iter().map(move |b| -j * a * b))
                    .collect();
                out.push(Term {
                    offsets: vec![[0, 0], [n as i32, 0]],
                    energies,
                });
            }
        }
        out
    }

    /// Largest span over all terms including the truncated tail.
    pub fn range(&self) -> usize {
        let finite = self.terms.iter().map(Term::span).max().unwrap_or(0);
        finite.max(self.tail.map_or(0, |t| t.cutoff))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
enum OffsetRepr {
    Line(i32),
    Plane([i32; 2]),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct TermRepr {
    offsets: Vec<OffsetRepr>,
    /// Comma-joined labels in offset order → energy; missing patterns
    /// have energy 0.
    table: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct InteractionFile {
    dimension: u8,
    alphabet: Alphabet,
    #[serde(default)]
    terms: Vec<TermRepr>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tail: Option<PairTail>,
}

impl TryFrom<InteractionFile> for InteractionSpec {
    type Error = Error;

    fn try_from(f: InteractionFile) -> Result<Self> {
        let q = f.alphabet.len();
        let mut terms = Vec::with_capacity(f.terms.len());
        for t in f.terms {
            let offsets: Vec<Offset> = t
                .offsets
                .iter()
                .map(|o| match *o {
                    OffsetRepr::Line(x) => [x, 0],
                    OffsetRepr::Plane(p) => p,
                })
                .collect();
            let size = q
                .checked_pow(offsets.len() as u32)
                .filter(|&s| s <= 1 << 24)
                .ok_or_else(|| Error::Interaction("term table too large".into()))?;
            let mut energies = vec![0.0; size];
            for (pattern, energy) in t.table {
                let labels: Vec<&str> = pattern.split(',').map(str::trim).collect();
                if labels.len() != offsets.len() {
                    return Err(Error::Interaction(format!(
                        "pattern {pattern:?} does not match {} offsets",
                        offsets.len()
                    )));
                }
                let mut code = 0;
                for l in labels {
                    let s = f.alphabet.index_of(l).ok_or_else(|| {
                        Error::Interaction(format!(
                            "unknown label {l:?}; valid labels are {:?}",
                            f.alphabet.symbols()
                        ))
                    })?;
                    code = code * q + s as usize;
                }
                energies[code] = energy;
            }
            terms.push(Term::new(offsets, energies, q)?);
        }
        InteractionSpec::new(f.dimension, f.alphabet, terms, f.tail)
    }
}

impl From<InteractionSpec> for InteractionFile {
    fn from(s: InteractionSpec) -> Self {
        let q = s.alphabet.len();
        let terms = s
            .terms
            .iter()
            .map(|t| {
                let k = t.offsets.len();
                let table = (0..t.energies.len())
                    .filter(|&c| t.energies[c] != 0.0)
                    .map(|c| {
                        let labels: Vec<&str> = (0..k)
                            .map(|i| s.alphabet.label(((c / q.pow((k - 1 - i) as u32)) % q) as u8))
                            .collect();
                        (labels.join(","), t.energies[c])
                    })
                    .collect();
                let offsets = t
                    .offsets
                    .iter()
                    .map(|&o| {
                        if s.dimension == 1 {
                            OffsetRepr::Line(o[0])
                        } else {
                            OffsetRepr::Plane(o)
                        }
                    })
                    .collect();
                TermRepr { offsets, table }
            })
            .collect();
        InteractionFile {
            dimension: s.dimension,
            alphabet: s.alphabet,
            terms,
            tail: s.tail,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let text = r#"{
            "dimension": 1,
            "alphabet": {"symbols": ["+", "-"], "spin_map": [1, -1]},
            "terms": [{"offsets": [0, 1], "table": {"+,+": -1, "-,-": -1, "+,-": 1, "-,+": 1}}],
            "tail": {"form": "power", "exponent": 2, "amplitude": 0.5, "cutoff": 8}
        }"#;
        let spec = InteractionSpec::from_json(text).unwrap();
        assert_eq!(spec.terms()[0].energies(), &[-1.0, 1.0, 1.0, -1.0]);
        assert_eq!(spec.range(), 8);
        assert_eq!(spec.compiled_terms().len(), 9);
        let back = InteractionSpec::from_json(&serde_json::to_string(&spec).unwrap()).unwrap();
        assert_eq!(back, spec);
    }

    #[test]
    fn rejects_bad_tables() {
        let bad = r#"{"dimension": 1, "alphabet": {"symbols": ["a", "b"]},
            "terms": [{"offsets": [0, 1], "table": {"a,c": 1}}]}"#;
        let err = InteractionSpec::from_json(bad).unwrap_err().to_string();
        assert!(err.contains("unknown label"), "{err}");
        assert!(Term::new(vec![[0, 0], [0, 0]], vec![0.0; 4], 2).is_err());
        assert!(Term::new(vec![[0, 0]], vec![0.0; 3], 2).is_err());
    }
}
