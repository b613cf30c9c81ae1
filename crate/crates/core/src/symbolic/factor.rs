use serde::{Deserialize, Serialize};

use super::alphabet::Alphabet;
use super::dimer::{dimer_alphabet, FIRST_MINUS, FIRST_PLUS};
use super::substitution::SubstitutionSystem;
use super::window::{GeneratorSpec, SequenceWindow};
use crate::error::{invalid, Error, Result};

const MAX_TABLE: usize = 1 << 24;

/// A sliding-block code: output entry `n` is the image of the input block
/// starting at `n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BlockMapRepr", into = "BlockMapRepr")]
pub struct BlockMap {
    name: String,
    block_len: usize,
    input: Alphabet,
    output: Alphabet,
    table: Vec<Option<u8>>,
}

#[derive(Serialize, Deserialize)]
struct BlockMapRepr {
    name: String,
    block_len: usize,
    input: Alphabet,
    output: Alphabet,
    entries: Vec<(Vec<u8>, u8)>,
}

impl TryFrom<BlockMapRepr> for BlockMap {
    type Error = Error;
    fn try_from(r: BlockMapRepr) -> Result<Self> {
        BlockMap::from_entries(r.name, r.block_len, r.input, r.output, &r.entries)
    }
}

impl From<BlockMap> for BlockMapRepr {
    fn from(m: BlockMap) -> Self {
        let entries = m
            .table
            .iter()
            .enumerate()
            .filter_map(|(code, img)| img.map(|i| (m.decode(code), i)))
            .collect();
        BlockMapRepr {
            name: m.name,
            block_len: m.block_len,
            input: m.input,
            output: m.output,
            entries,
        }
    }
}

impl BlockMap {
    fn empty(name: String, block_len: usize, input: Alphabet, output: Alphabet) -> Result<Self> {
        if block_len == 0 {
            return Err(invalid("block_len", "must be at least 1"));
        }
        let size = (input.len() as u128).checked_pow(block_len as u32);
        let size = match size {
            Some(s) if s <= MAX_TABLE as u128 => s as usize,
            _ => {
                return Err(invalid(
                    "block_len",
                    format!("{}^{block_len} blocks exceed the table limit", input.len()),
                ))
            }
        };
        Ok(BlockMap {
            name,
            block_len,
            input,
            output,
            table: vec![None; size],
        })
    }

    pub fn from_entries(
        name: impl Into<String>,
        block_len: usize,
        input: Alphabet,
        output: Alphabet,
        entries: &[(Vec<u8>, u8)],
    ) -> Result<Self> {
        let mut map = BlockMap::empty(name.into(), block_len, input, output)?;
        for (block, image) in entries {
            if block.len() != block_len || block.iter().any(|&s| s as usize >= map.input.len()) {
                return Err(invalid("block_map", format!("malformed block {block:?}")));
            }
            if *image as usize >= map.output.len() {
                return Err(invalid("block_map", format!("image {image} outside output alphabet")));
            }
            let code = map.encode(block);
            map.table[code] = Some(*image);
        }
        Ok(map)
    }

    /// Tabulate `f` over every block; `None` leaves the block unmapped.
    pub fn from_fn(
        name: impl Into<String>,
        block_len: usize,
        input: Alphabet,
        output: Alphabet,
        f: impl Fn(&[u8]) -> Option<u8>,
    ) -> Result<Self> {
        let mut map = BlockMap::empty(name.into(), block_len, input, output)?;
        for code in 0..map.table.len() {
            let block = map.decode(code);
            map.table[code] = f(&block);
        }
        if map.table.iter().flatten().any(|&i| i as usize >= map.output.len()) {
            return Err(invalid("block_map", "image outside output alphabet"));
        }
        Ok(map)
    }

    pub fn identity(alphabet: Alphabet) -> Self {
        BlockMap::from_fn("identity", 1, alphabet.clone(), alphabet, |b| Some(b[0]))
            .expect("identity table")
    }

    /// v_n = a if u_n ≠ u_{n+1} else b: Thue–Morse onto period doubling.
    pub fn thue_morse_to_period_doubling() -> Self {
        let tm = SubstitutionSystem::thue_morse().alphabet().clone();
        let pd = SubstitutionSystem::period_doubling().alphabet().clone();
        BlockMap::from_fn("period-doubling", 2, tm, pd, |b| Some(u8::from(b[0] == b[1])))
            .expect("static table")
    }

    /// 1 where a dimer starts, 0 elsewhere. Spins 1.0 / 0.0 so the output
    /// doubles as a numeric indicator.
    pub fn dimer_start() -> Self {
        let out = Alphabet::with_spins(["0", "1"], vec![0.0, 1.0]).expect("static alphabet");
        BlockMap::from_fn("dimer-start", 1, dimer_alphabet(), out, |b| {
            Some(u8::from(b[0] == FIRST_PLUS || b[0] == FIRST_MINUS))
        })
        .expect("static table")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn block_len(&self) -> usize {
        self.block_len
    }

    pub fn input(&self) -> &Alphabet {
        &self.input
    }

    pub fn output(&self) -> &Alphabet {
        &self.output
    }

    fn encode(&self, block: &[u8]) -> usize {
        let k = self.input.len();
        block.iter().fold(0usize, |acc, &s| acc * k + s as usize)
    }

    fn decode(&self, mut code: usize) -> Vec<u8> {
        let k = self.input.len();
        let mut block = vec![0u8; self.block_len];
        for slot in block.iter_mut().rev() {
            *slot = (code % k) as u8;
            code /= k;
        }
        block
    }

    pub fn image(&self, block: &[u8]) -> Option<u8> {
        if block.len() != self.block_len {
            return None;
        }
        self.table[self.encode(block)]
    }
}

/// Apply a sliding-block code. The output has `N − block_len + 1` entries
/// and keeps the input offset.
pub fn factor_map(window: &SequenceWindow, map: &BlockMap) -> Result<SequenceWindow> {
    if window.alphabet().symbols() != map.input.symbols() {
        return Err(invalid(
            "block_map",
            format!(
                "map expects alphabet {:?}, window has {:?}",
                map.input.symbols(),
                window.alphabet().symbols()
            ),
        ));
    }
    let w = map.block_len;
    if w > window.len() {
        return Err(invalid(
            "block_map",
            format!("block length {w} exceeds window length {}", window.len()),
        ));
    }
    let s = window.symbols();
    let k = map.input.len();
    let modulus = map.table.len();
    let mut code = map.encode(&s[..w - 1]);
    let mut out = Vec::with_capacity(s.len() - w + 1);
    for n in 0..=s.len() - w {
        code = (code * k + s[n + w - 1] as usize) % modulus;
        match map.table[code] {
            Some(img) => out.push(img),
            None => {
                return Err(Error::UnmappedBlock {
                    block: map.input.render(&s[n..n + w]),
                })
            }
        }
    }
    Ok(SequenceWindow::from_parts(
        out,
        map.output.clone(),
        window.offset(),
        GeneratorSpec::Factor {
            source: Box::new(window.provenance().clone()),
            map: map.clone(),
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::dimer::{dimer_sample, DimerParams, Parity};
    use crate::symbolic::substitution::iterate_substitution;

    #[test]
    fn thue_morse_factor_is_period_doubling() {
        let tm = iterate_substitution(&SubstitutionSystem::thue_morse(), &[0], 8).unwrap();
        let pd = factor_map(&tm, &BlockMap::thue_morse_to_period_doubling()).unwrap();
        assert_eq!(pd.render(), "abaaaba");
        assert_eq!(pd.len(), 7);

        let tm = iterate_substitution(&SubstitutionSystem::thue_morse(), &[0], 1 << 14).unwrap();
        let pd = factor_map(&tm, &BlockMap::thue_morse_to_period_doubling()).unwrap();
        let direct =
            iterate_substitution(&SubstitutionSystem::period_doubling(), &[0], (1 << 14) - 1)
                .unwrap();
        assert_eq!(pd.symbols(), direct.symbols());
    }

    #[test]
    fn identity_keeps_window() {
        let tm = iterate_substitution(&SubstitutionSystem::thue_morse(), &[0], 100).unwrap();
        let id = factor_map(&tm, &BlockMap::identity(tm.alphabet().clone())).unwrap();
        assert_eq!(id.symbols(), tm.symbols());
        assert_eq!(id.offset(), tm.offset());
    }

    #[test]
    fn dimer_start_indicator_alternates() {
        let w = dimer_sample(&DimerParams { parity: Parity::Even, seed: 9 }, 20).unwrap();
        let ind = factor_map(&w, &BlockMap::dimer_start()).unwrap();
        assert_eq!(ind.render(), "10101010101010101010");
        let w = dimer_sample(&DimerParams { parity: Parity::Odd, seed: 9 }, 20).unwrap();
        let ind = factor_map(&w, &BlockMap::dimer_start()).unwrap();
        assert_eq!(ind.render(), "01010101010101010101");
    }

    #[test]
    fn unmapped_block_is_named() {
        let tm = SubstitutionSystem::thue_morse().alphabet().clone();
        let partial =
            BlockMap::from_entries("partial", 2, tm.clone(), tm, &[(vec![0, 1], 0), (vec![1, 0], 1)])
                .unwrap();
        let w = iterate_substitution(&SubstitutionSystem::thue_morse(), &[0], 8).unwrap();
        match factor_map(&w, &partial) {
            Err(Error::UnmappedBlock { block }) => assert_eq!(block, "11"),
            other => panic!("expected unmapped block, got {other:?}"),
        }
    }

    #[test]
    fn block_longer_than_window() {
        let w = iterate_substitution(&SubstitutionSystem::thue_morse(), &[0], 1).unwrap();
        assert!(factor_map(&w, &BlockMap::thue_morse_to_period_doubling()).is_err());
    }

    #[test]
    fn serde_round_trip() {
        let m = BlockMap::thue_morse_to_period_doubling();
        let json = serde_json::to_string(&m).unwrap();
        let back: BlockMap = serde_json::from_str(&json).unwrap();
        assert_eq!(m, back);
    }
}
