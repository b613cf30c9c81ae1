use serde::{Deserialize, Serialize};

use super::alphabet::Alphabet;
use super::dimer::{dimer_sample, DimerParams};
use super::factor::{factor_map, BlockMap};
use super::sequences::{iid_sample, paperfolding_range, periodic, rudin_shapiro_range};
use super::sturmian::{sturmian_range, SturmianParams};
use super::substitution::{iterate_substitution, SubstitutionSystem};
use crate::error::{invalid, Error, Result};

/// Everything needed to rebuild a window bit-exactly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "generator", rename_all = "kebab-case")]
pub enum GeneratorSpec {
    Substitution {
        system: SubstitutionSystem,
        seed_word: Vec<u8>,
        len: usize,
    },
    Sturmian {
        params: SturmianParams,
        start: i64,
        len: usize,
    },
    RudinShapiro {
        start: u64,
        len: usize,
    },
    Paperfolding {
        start: u64,
        len: usize,
    },
    Dimer {
        params: DimerParams,
        len: usize,
    },
    Iid {
        alphabet: Alphabet,
        seed: u64,
        len: usize,
    },
    Periodic {
        alphabet: Alphabet,
        pattern: Vec<u8>,
        len: usize,
    },
    /// `len` entries of `source` starting at `start`, re-indexed to `offset`.
    Slice {
        source: Box<GeneratorSpec>,
        start: usize,
        len: usize,
        offset: i64,
    },
    Factor {
        source: Box<GeneratorSpec>,
        map: BlockMap,
    },
    /// `source` with its alphabet's spin map replaced.
    Encoded {
        source: Box<GeneratorSpec>,
        spins: Vec<f64>,
    },
}

impl GeneratorSpec {
    pub fn name(&self) -> &str {
        match self {
            GeneratorSpec::Substitution { system, .. } => system.name(),
            GeneratorSpec::Sturmian { .. } => "sturmian",
            GeneratorSpec::RudinShapiro { .. } => "rudin-shapiro",
            GeneratorSpec::Paperfolding { .. } => "paperfolding",
            GeneratorSpec::Dimer { .. } => "dimer",
            GeneratorSpec::Iid { .. } => "iid",
            GeneratorSpec::Periodic { .. } => "periodic",
            GeneratorSpec::Slice { source, .. } => source.name(),
            GeneratorSpec::Factor { map, .. } => map.name(),
            GeneratorSpec::Encoded { source, .. } => source.name(),
        }
    }

    /// The RNG seed driving this window, if any.
    pub fn seed(&self) -> Option<u64> {
        match self {
            GeneratorSpec::Dimer { params, .. } => Some(params.seed),
            GeneratorSpec::Iid { seed, .. } => Some(*seed),
            GeneratorSpec::Slice { source, .. }
            | GeneratorSpec::Factor { source, .. }
            | GeneratorSpec::Encoded { source, .. } => source.seed(),
            _ => None,
        }
    }

    pub fn regenerate(&self) -> Result<SequenceWindow> {
        match self {
            GeneratorSpec::Substitution {
                system,
                seed_word,
                len,
            } => iterate_substitution(system, seed_word, *len),
            GeneratorSpec::Sturmian { params, start, len } => sturmian_range(params, *start, *len),
            GeneratorSpec::RudinShapiro { start, len } => rudin_shapiro_range(*start, *len),
            GeneratorSpec::Paperfolding { start, len } => paperfolding_range(*start, *len),
            GeneratorSpec::Dimer { params, len } => dimer_sample(params, *len),
            GeneratorSpec::Iid {
                alphabet,
                seed,
                len,
            } => iid_sample(alphabet.clone(), *seed, *len),
            GeneratorSpec::Periodic {
                alphabet,
                pattern,
                len,
            } => periodic(alphabet.clone(), pattern, *len),
            GeneratorSpec::Slice {
                source,
                start,
                len,
                offset,
            } => source.regenerate()?.slice(*start, *len, *offset),
            GeneratorSpec::Factor { source, map } => factor_map(&source.regenerate()?, map),
            GeneratorSpec::Encoded { source, spins } => {
                source.regenerate()?.with_spins(spins.clone())
            }
        }
    }
}

/// A finite sample of a bi-infinite symbolic configuration: entry `i`
/// sits at lattice site `offset + i`.
#[derive(Debug, Clone, PartialEq)]
pub struct SequenceWindow {
    symbols: Vec<u8>,
    alphabet: Alphabet,
    offset: i64,
    provenance: GeneratorSpec,
}

impl SequenceWindow {
    pub fn new(
        symbols: Vec<u8>,
        alphabet: Alphabet,
        offset: i64,
        provenance: GeneratorSpec,
    ) -> Result<Self> {
        if symbols.is_empty() {
            return Err(invalid("len", "a window needs at least one entry"));
        }
        let k = alphabet.len();
        if let Some(bad) = symbols.iter().find(|&&s| s as usize >= k) {
            return Err(Error::InvalidAlphabet(format!(
                "symbol index {bad} outside alphabet of size {k}"
            )));
        }
        Ok(SequenceWindow {
            symbols,
            alphabet,
            offset,
            provenance,
        })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn provenance(&self) -> &GeneratorSpec {
        &self.provenance
    }

    pub fn render(&self) -> String {
        self.alphabet.render(&self.symbols)
    }

    pub fn is_numeric(&self) -> bool {
        self.alphabet.spin_map().is_some()
    }

    /// Numeric values via the alphabet's spin map.
    pub fn spins(&self) -> Result<Vec<f64>> {
        let map = self.spin_table()?;
        Ok(self.symbols.iter().map(|&s| map[s as usize]).collect())
    }

    pub(crate) fn spin_table(&self) -> Result<&[f64]> {
        self.alphabet
            .spin_map()
            .ok_or_else(|| Error::NotNumeric(self.alphabet.symbols().to_vec()))
    }

    /// `len` entries starting at `start`, placed at lattice offset `offset`.
    pub fn slice(&self, start: usize, len: usize, offset: i64) -> Result<SequenceWindow> {
        if len == 0 || start + len > self.len() {
            return Err(invalid(
                "len",
                format!("slice [{start}, {}) outside window of length {}", start + len, self.len()),
            ));
        }
        Ok(SequenceWindow {
            symbols: self.symbols[start..start + len].to_vec(),
            alphabet: self.alphabet.clone(),
            offset,
            provenance: GeneratorSpec::Slice {
                source: Box::new(self.provenance.clone()),
                start,
                len,
                offset,
            },
        })
    }

    /// The first `len` entries, same offset.
    pub fn prefix(&self, len: usize) -> Result<SequenceWindow> {
        if len == self.len() {
            return Ok(self.clone());
        }
        self.slice(0, len, self.offset)
    }

    /// Replace the alphabet's spin encoding, keeping the symbols.
    pub fn with_spins(&self, spins: Vec<f64>) -> Result<SequenceWindow> {
        let alphabet = Alphabet::with_spins(self.alphabet.symbols().to_vec(), spins.clone())?;
        let source = match &self.provenance {
            GeneratorSpec::Encoded { source, .. } => source.clone(),
            other => Box::new(other.clone()),
        };
        Ok(SequenceWindow {
            symbols: self.symbols.clone(),
            alphabet,
            offset: self.offset,
            provenance: GeneratorSpec::Encoded { source, spins },
        })
    }

    /// Sign-flipped copy; only meaningful for numeric windows whose spin
    /// map is closed under negation, so the flip is realized on the map.
    pub fn negated(&self) -> Result<SequenceWindow> {
        let spins = self.spin_table()?.iter().map(|s| -s).collect();
        self.with_spins(spins)
    }

    pub(crate) fn from_parts(
        symbols: Vec<u8>,
        alphabet: Alphabet,
        offset: i64,
        provenance: GeneratorSpec,
    ) -> Self {
        debug_assert!(!symbols.is_empty());
        SequenceWindow {
            symbols,
            alphabet,
            offset,
            provenance,
        }
    }
}
