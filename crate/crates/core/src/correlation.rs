//! Pair correlations γ(n) = ⟨σ_i σ_{i+n}⟩ and Birkhoff averages over finite
//! windows. By unique ergodicity of the built-in systems a single long
//! window stands in for the measure average.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_rational::Rational64;
use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::symbolic::SequenceWindow;

/// Above this lag count the FFT path is used.
pub const FFT_LAG_THRESHOLD: usize = 1000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Autocorrelation {
    /// values[n] = γ_N(n) for n = 0..=max_lag
    pub values: Vec<f64>,
    pub n: usize,
}

impl Autocorrelation {
    pub fn max_lag(&self) -> usize {
        self.values.len() - 1
    }

    pub fn value(&self, lag: usize) -> f64 {
        self.values[lag]
    }
}

fn check_lag(len: usize, max_lag: usize) -> Result<()> {
    if max_lag > len / 10 {
        return Err(invalid(
            "max_lag",
            format!("{max_lag} exceeds N/10 = {} for N = {len}", len / 10),
        ));
    }
    Ok(())
}

/// γ_N(n) = (1/(N−n)) Σ_i σ_i σ_{i+n}, for n ≤ max_lag ≤ N/10.
pub fn autocorrelation(window: &SequenceWindow, max_lag: usize) -> Result<Autocorrelation> {
    let spins = window.spins()?;
    check_lag(spins.len(), max_lag)?;
    let values = if max_lag > FFT_LAG_THRESHOLD {
        autocorrelation_fft(&spins, max_lag)
    } else {
        autocorrelation_direct(&spins, max_lag)
    };
    Ok(Autocorrelation {
        values,
        n: spins.len(),
    })
}

pub fn autocorrelation_direct(values: &[f64], max_lag: usize) -> Vec<f64> {
    let n = values.len();
    (0..=max_lag)
        .map(|lag| {
            let s: f64 = values[..n - lag]
                .iter()
                .zip(&values[lag..])
                .map(|(a, b)| a * b)
                .sum();
            s / (n - lag) as f64
        })
        .collect()
}

/// Wiener–Khinchin on the zero-padded window, padded to at least 2N so the
/// circular correlation equals the linear one.
pub fn autocorrelation_fft(values: &[f64], max_lag: usize) -> Vec<f64> {
    let n = values.len();
    let m = (2 * n).next_power_of_two();
    let mut buf: Vec<Complex64> = values
        .iter()
        .map(|&v| Complex64::new(v, 0.0))
        .chain(std::iter::repeat(Complex64::new(0.0, 0.0)))
        .take(m)
        .collect();
    let mut planner = FftPlanner::<f64>::new();
    planner.plan_fft_forward(m).process(&mut buf);
    for z in buf.iter_mut() {
        *z = Complex64::new(z.norm_sqr(), 0.0);
    }
    planner.plan_fft_inverse(m).process(&mut buf);
    (0..=max_lag)
        .map(|lag| buf[lag].re / m as f64 / (n - lag) as f64)
        .collect()
}

/// Exact Thue–Morse correlation from γ(0) = 1, γ(2n) = γ(n),
/// γ(2n+1) = −(γ(n) + γ(n+1))/2.
pub fn tm_autocorrelation_oracle(lag: u64) -> Rational64 {
    fn go(n: u64, memo: &mut HashMap<u64, Rational64>) -> Rational64 {
        if n == 0 {
            return Rational64::from_integer(1);
        }
        if n == 1 {
            // γ(1) = −(1 + γ(1))/2
            return Rational64::new(-1, 3);
        }
        if let Some(&v) = memo.get(&n) {
            return v;
        }
        let v = if n % 2 == 0 {
            go(n / 2, memo)
        } else {
            let k = n / 2;
            -(go(k, memo) + go(k + 1, memo)) / 2
        };
        memo.insert(n, v);
        v
    }
    go(lag, &mut HashMap::new())
}

pub type BlockFn = Arc<dyn Fn(&[u8]) -> f64 + Send + Sync>;

#[derive(Clone)]
enum ObservableKind {
    Constant(f64),
    Spin,
    Indicator(u8),
    Table(HashMap<Vec<u8>, f64>),
    Custom(BlockFn),
}

/// A bounded function of length-`block_len` blocks.
#[derive(Clone)]
pub struct ObservableSpec {
    name: String,
    block_len: usize,
    kind: ObservableKind,
}

impl fmt::Debug for ObservableSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ObservableSpec")
            .field("name", &self.name)
            .field("block_len", &self.block_len)
            .finish()
    }
}

impl ObservableSpec {
    pub fn constant(value: f64) -> Self {
        ObservableSpec {
            name: format!("constant({value})"),
            block_len: 1,
            kind: ObservableKind::Constant(value),
        }
    }

    /// The site value through the window's spin map.
    pub fn spin() -> Self {
        ObservableSpec {
            name: "spin".into(),
            block_len: 1,
            kind: ObservableKind::Spin,
        }
    }

    pub fn indicator(symbol: u8) -> Self {
        ObservableSpec {
            name: format!("indicator({symbol})"),
            block_len: 1,
            kind: ObservableKind::Indicator(symbol),
        }
    }

    /// Lookup table on blocks; blocks missing from the table are an error
    /// at evaluation time.
    pub fn table(name: impl Into<String>, block_len: usize, table: HashMap<Vec<u8>, f64>) -> Result<Self> {
        if block_len == 0 {
            return Err(invalid("block_len", "must be at least 1"));
        }
        if table.keys().any(|k| k.len() != block_len) || table.values().any(|v| !v.is_finite()) {
            return Err(invalid("table", "blocks must have block_len symbols and finite values"));
        }
        Ok(ObservableSpec {
            name: name.into(),
            block_len,
            kind: ObservableKind::Table(table),
        })
    }

    pub fn custom(
        name: impl Into<String>,
        block_len: usize,
        f: impl Fn(&[u8]) -> f64 + Send + Sync + 'static,
    ) -> Result<Self> {
        if block_len == 0 {
            return Err(invalid("block_len", "must be at least 1"));
        }
        Ok(ObservableSpec {
            name: name.into(),
            block_len,
            kind: ObservableKind::Custom(Arc::new(f)),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn block_len(&self) -> usize {
        self.block_len
    }

    /// Observable values at every block position, N − w + 1 of them.
    pub fn evaluate(&self, window: &SequenceWindow) -> Result<Vec<f64>> {
        let w = self.block_len;
        if w > window.len() {
            return Err(invalid("block_len", "longer than the window"));
        }
        let s = window.symbols();
        let count = s.len() - w + 1;
        let values: Vec<f64> = match &self.kind {
            ObservableKind::Constant(c) => vec![*c; count],
            ObservableKind::Spin => window.spins()?,
            ObservableKind::Indicator(sym) => s.iter().map(|&x| f64::from(u8::from(x == *sym))).collect(),
            ObservableKind::Table(t) => s
                .windows(w)
                .map(|b| {
                    t.get(b).copied().ok_or_else(|| Error::UnmappedBlock {
                        block: window.alphabet().render(b),
                    })
                })
                .collect::<Result<_>>()?,
            ObservableKind::Custom(f) => s.windows(w).map(|b| f(b)).collect(),
        };
        if values.iter().any(|v| !v.is_finite()) {
            return Err(invalid("observable", format!("{} produced a non-finite value", self.name)));
        }
        Ok(values)
    }

    /// sup |obs| over the evaluated values' possible range, when it is
    /// known without evaluation.
    pub fn bound(&self, window: &SequenceWindow) -> Option<f64> {
        match &self.kind {
            ObservableKind::Constant(c) => Some(c.abs()),
            ObservableKind::Spin => window
                .alphabet()
                .spin_map()
                .map(|m| m.iter().fold(0.0f64, |a, b| a.max(b.abs()))),
            ObservableKind::Indicator(_) => Some(1.0),
            ObservableKind::Table(t) => Some(t.values().fold(0.0f64, |a, b| a.max(b.abs()))),
            ObservableKind::Custom(_) => None,
        }
    }
}

/// Spatial average (1/(N−w+1)) Σ_n obs(block at n).
pub fn birkhoff_average(window: &SequenceWindow, obs: &ObservableSpec) -> Result<f64> {
    let values = obs.evaluate(window)?;
    Ok(values.iter().sum::<f64>() / values.len() as f64)
}

/// The exact oracle as f64, cached for lags up to 4096.
pub fn tm_autocorrelation_f64(lag: u64) -> f64 {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        (0..=4096)
            .map(|n| {
                let r = tm_autocorrelation_oracle(n);
                *r.numer() as f64 / *r.denom() as f64
            })
            .collect()
    });
    match table.get(lag as usize) {
        Some(&v) => v,
        None => {
            let r = tm_autocorrelation_oracle(lag);
            *r.numer() as f64 / *r.denom() as f64
        }
    }
}
