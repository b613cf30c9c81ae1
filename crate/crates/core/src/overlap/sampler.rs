use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Result};
use crate::seeds::derive;
use crate::symbolic::{
    dimer_sample, iid_sample, sturmian_alphabet, Alphabet, DimerParams, GeneratorSpec, Parity,
    RotationNumber, RotationTable, SequenceWindow, SturmianParams, System,
};

/// Draws independent configurations from a translation-invariant measure.
/// Every window covers the sites −N/2..N/2.
pub trait ReplicaSampler: Send + Sync {
    fn name(&self) -> String;
    fn window_len(&self) -> usize;
    fn draw(&self, seed: u64) -> Result<SequenceWindow>;
}

fn centered(n: usize) -> i64 {
    -((n / 2) as i64)
}

/// Uniform random shifts into one long word of length 101·N: for a
/// uniquely ergodic system a uniform shift approximates a draw from its
/// unique invariant measure.
pub struct ShiftSampler {
    base: SequenceWindow,
    n: usize,
}

impl ShiftSampler {
    pub const LENGTH_FACTOR: usize = 100;

    pub fn new(system: &System, n: usize) -> Result<Self> {
        if system.is_stochastic() {
            return Err(invalid("system", "shift sampling needs a deterministic system"));
        }
        let base = system.window((Self::LENGTH_FACTOR + 1) * n, None)?;
        Self::from_word(base, n)
    }

    pub fn from_word(base: SequenceWindow, n: usize) -> Result<Self> {
        if n == 0 || base.len() < (Self::LENGTH_FACTOR + 1) * n {
            return Err(invalid(
                "N",
                format!("base word of length {} is shorter than 101·N", base.len()),
            ));
        }
        Ok(ShiftSampler { base, n })
    }
}

impl ReplicaSampler for ShiftSampler {
    fn name(&self) -> String {
        format!("{} (shift)", self.base.provenance().name())
    }

    fn window_len(&self) -> usize {
        self.n
    }

    fn draw(&self, seed: u64) -> Result<SequenceWindow> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let start = rng.gen_range(0..=self.base.len() - self.n);
        self.base.slice(start, self.n, centered(self.n))
    }
}

/// Uniform random phase β for a fixed rotation number.
pub struct SturmianSampler {
    alpha: RotationNumber,
    table: RotationTable,
}

impl SturmianSampler {
    pub fn new(alpha: RotationNumber, n: usize) -> Result<Self> {
        SturmianParams::new(alpha, 0.0)?;
        if n == 0 {
            return Err(invalid("N", "must be at least 1"));
        }
        Ok(SturmianSampler {
            alpha,
            table: RotationTable::new(alpha, centered(n), n),
        })
    }
}

impl ReplicaSampler for SturmianSampler {
    fn name(&self) -> String {
        format!("sturmian (alpha = {})", self.alpha.value())
    }

    fn window_len(&self) -> usize {
        self.table.len()
    }

    fn draw(&self, seed: u64) -> Result<SequenceWindow> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let beta: f64 = rng.gen();
        let n = self.table.len();
        Ok(SequenceWindow::from_parts(
            self.table.word(beta),
            sturmian_alphabet(),
            self.table.start(),
            GeneratorSpec::Sturmian {
                params: SturmianParams {
                    alpha: self.alpha,
                    beta,
                    periodic: false,
                },
                start: self.table.start(),
                len: n,
            },
        ))
    }
}

/// Dimers with the parity drawn 1/2–1/2 per replica, i.e. the
/// translation-invariant mixture of the two ergodic components.
pub struct DimerSampler {
    n: usize,
}

impl DimerSampler {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n % 2 != 0 {
            return Err(invalid("N", "dimer windows need an even length"));
        }
        Ok(DimerSampler { n })
    }
}

impl ReplicaSampler for DimerSampler {
    fn name(&self) -> String {
        "dimer (parity mixed)".into()
    }

    fn window_len(&self) -> usize {
        self.n
    }

    fn draw(&self, seed: u64) -> Result<SequenceWindow> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let parity = if rng.gen::<bool>() {
            Parity::Even
        } else {
            Parity::Odd
        };
        let w = dimer_sample(
            &DimerParams {
                parity,
                seed: derive(seed, 1),
            },
            self.n,
        )?;
        w.slice(0, self.n, centered(self.n))
    }
}

/// Fresh i.i.d. ± windows.
pub struct IidSampler {
    n: usize,
}

impl IidSampler {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(invalid("N", "must be at least 1"));
        }
        Ok(IidSampler { n })
    }
}

impl ReplicaSampler for IidSampler {
    fn name(&self) -> String {
        "iid".into()
    }

    fn window_len(&self) -> usize {
        self.n
    }

    fn draw(&self, seed: u64) -> Result<SequenceWindow> {
        iid_sample(Alphabet::plus_minus(), seed, self.n)?.slice(0, self.n, centered(self.n))
    }
}

/// Always returns the same window.
pub struct FixedSampler {
    window: SequenceWindow,
}

impl FixedSampler {
    pub fn new(window: SequenceWindow) -> Self {
        FixedSampler { window }
    }
}

impl ReplicaSampler for FixedSampler {
    fn name(&self) -> String {
        "fixed".into()
    }

    fn window_len(&self) -> usize {
        self.window.len()
    }

    fn draw(&self, _seed: u64) -> Result<SequenceWindow> {
        Ok(self.window.clone())
    }
}

/// The natural replica sampler for a built-in system.
pub fn sampler_for(system: &System, n: usize) -> Result<Box<dyn ReplicaSampler>> {
    Ok(match system {
        System::Sturmian { alpha, .. } => Box::new(SturmianSampler::new(*alpha, n)?),
        System::Dimer { .. } => Box::new(DimerSampler::new(n)?),
        System::Iid => Box::new(IidSampler::new(n)?),
        other => Box::new(ShiftSampler::new(other, n)?),
    })
}
