use serde::{Deserialize, Serialize};

use super::alphabet::Alphabet;
use super::dimer::{dimer_sample, DimerParams, Parity};
use super::sequences::{iid_sample, paperfolding, periodic, rudin_shapiro};
use super::sturmian::{sturmian_word, RotationNumber, SturmianParams};
use super::substitution::{iterate_substitution, SubstitutionSystem};
use super::window::SequenceWindow;
use crate::error::{invalid, Result};

/// The built-in systems with their default ±1 encodings:
///
/// | system          | encoding               |
/// |-----------------|------------------------|
/// | thue-morse      | 0 ↦ +1, 1 ↦ −1         |
/// | fibonacci       | a ↦ +1, b ↦ −1         |
/// | period-doubling | a ↦ +1, b ↦ −1         |
/// | rudin-shapiro   | its own ±1 values      |
/// | paperfolding    | 1 ↦ +1, 0 ↦ −1         |
/// | sturmian        | 1 ↦ +1, 0 ↦ −1         |
/// | dimer           | spin of each dimer site|
/// | iid, periodic   | + ↦ +1, − ↦ −1         |
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "system", rename_all = "kebab-case")]
pub enum System {
    ThueMorse,
    Fibonacci,
    PeriodDoubling,
    RudinShapiro,
    Paperfolding,
    Sturmian { alpha: RotationNumber, beta: f64 },
    Dimer { parity: Parity },
    Iid,
    /// Repeats `pattern` over the `+`/`-` alphabet.
    Periodic { pattern: String },
}

impl System {
    pub const NAMES: &'static [&'static str] = &[
        "thue-morse",
        "fibonacci",
        "period-doubling",
        "rudin-shapiro",
        "paperfolding",
        "sturmian",
        "dimer",
        "iid",
        "periodic",
    ];

    /// Parse a system name with default parameters (golden Sturmian at
    /// β = 0, even dimers, alternating periodic pattern).
    pub fn from_name(name: &str) -> Option<System> {
        Some(match name {
            "thue-morse" => System::ThueMorse,
            "fibonacci" => System::Fibonacci,
            "period-doubling" => System::PeriodDoubling,
            "rudin-shapiro" => System::RudinShapiro,
            "paperfolding" => System::Paperfolding,
            "sturmian" => System::Sturmian {
                alpha: RotationNumber::golden(),
                beta: 0.0,
            },
            "dimer" => System::Dimer {
                parity: Parity::Even,
            },
            "iid" => System::Iid,
            "periodic" => System::Periodic {
                pattern: "+-".into(),
            },
            _ => return None,
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            System::ThueMorse => "thue-morse",
            System::Fibonacci => "fibonacci",
            System::PeriodDoubling => "period-doubling",
            System::RudinShapiro => "rudin-shapiro",
            System::Paperfolding => "paperfolding",
            System::Sturmian { .. } => "sturmian",
            System::Dimer { .. } => "dimer",
            System::Iid => "iid",
            System::Periodic { .. } => "periodic",
        }
    }

    pub fn is_stochastic(&self) -> bool {
        matches!(self, System::Dimer { .. } | System::Iid)
    }

    pub fn substitution(&self) -> Option<SubstitutionSystem> {
        match self {
            System::ThueMorse => Some(SubstitutionSystem::thue_morse()),
            System::Fibonacci => Some(SubstitutionSystem::fibonacci()),
            System::PeriodDoubling => Some(SubstitutionSystem::period_doubling()),
            _ => None,
        }
    }

    /// A window of length `n` starting at site 0. Stochastic systems need
    /// a seed.
    pub fn window(&self, n: usize, seed: Option<u64>) -> Result<SequenceWindow> {
        let need_seed = || invalid("seed", "stochastic systems need an explicit seed");
        if let Some(sub) = self.substitution() {
            return iterate_substitution(&sub, &[0], n);
        }
        match self {
            System::RudinShapiro => rudin_shapiro(n),
            System::Paperfolding => paperfolding(n),
            System::Sturmian { alpha, beta } => {
                let params = SturmianParams::new(*alpha, *beta)?;
                sturmian_word(&params, n)
            }
            System::Dimer { parity } => {
                let seed = seed.ok_or_else(need_seed)?;
                dimer_sample(&DimerParams { parity: *parity, seed }, n)
            }
            System::Iid => iid_sample(Alphabet::plus_minus(), seed.ok_or_else(need_seed)?, n),
            System::Periodic { pattern } => {
                let a = Alphabet::plus_minus();
                let p = a.parse_word(pattern)?;
                periodic(a, &p, n)
            }
            _ => unreachable!("substitution systems handled above"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_name_parses() {
        for name in System::NAMES {
            let s = System::from_name(name).unwrap();
            assert_eq!(s.name(), *name);
            let w = s.window(64, Some(1)).unwrap();
            assert_eq!(w.len(), 64);
            assert!(w.is_numeric());
        }
        assert!(System::from_name("penrose").is_none());
    }

    #[test]
    fn stochastic_needs_seed() {
        assert!(System::Iid.window(8, None).is_err());
        assert!(System::ThueMorse.window(8, None).is_ok());
    }
}
