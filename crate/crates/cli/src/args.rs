use std::path::PathBuf;

use aperiodic::symbolic::{Parity, RotationNumber};
use aperiodic::System;
use clap::builder::PossibleValuesParser;
use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

#[derive(Debug, Parser)]
#[command(name = "aperiodic", version, about = "Reproducible experiments on aperiodic sequences and lattice Gibbs models")]
pub struct Cli {
    /// Output directory
    #[arg(long, global = true, env = "APERIODIC_OUT_DIR", default_value = "aperiodic-out")]
    pub out: PathBuf,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, PartialEq, Subcommand, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Write a window of a sequence
    Generate(GenerateArgs),
    /// Site-averaged autocorrelation
    Autocorr(AutocorrArgs),
    /// Periodogram and Bragg classification
    Diffract(DiffractArgs),
    /// Twisted Birkhoff averages at a candidate eigenvalue
    Eigenvalue(EigenvalueArgs),
    /// Replica overlap distribution, atoms and ultrametricity
    Overlap(OverlapArgs),
    /// Metropolis runs and pair correlations
    Gibbs(GibbsArgs),
    /// Word complexity and entropy profile
    Complexity(ComplexityArgs),
    /// Re-run the configuration recorded in a manifest
    #[serde(skip)]
    Replay(ReplayArgs),
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct SystemArgs {
    #[arg(long, value_parser = PossibleValuesParser::new(System::NAMES))]
    pub system: String,

    /// Sturmian rotation number: `golden`, a decimal, or `a,b,d,c` for (a + b√d)/c
    #[arg(long, default_value = "golden")]
    pub alpha: String,

    /// Sturmian phase
    #[arg(long, default_value_t = 0.0)]
    pub phase: f64,

    #[arg(long, default_value = "even", value_parser = PossibleValuesParser::new(["even", "odd"]))]
    pub parity: String,

    /// Periodic pattern over `+` and `-`
    #[arg(long, default_value = "+-")]
    pub pattern: String,

    /// Seed for stochastic systems and samplers
    #[arg(long)]
    pub seed: Option<u64>,
}

impl SystemArgs {
    pub fn resolve(&self) -> anyhow::Result<System> {
        let base = System::from_name(&self.system)
            .ok_or_else(|| anyhow::anyhow!("unknown system {:?}; valid: {}", self.system, System::NAMES.join(", ")))?;
        Ok(match base {
            System::Sturmian { .. } => System::Sturmian {
                alpha: parse_alpha(&self.alpha)?,
                beta: self.phase,
            },
            System::Dimer { .. } => System::Dimer {
                parity: if self.parity == "odd" { Parity::Odd } else { Parity::Even },
            },
            System::Periodic { .. } => System::Periodic {
                pattern: self.pattern.clone(),
            },
            other => other,
        })
    }
}

pub fn parse_alpha(text: &str) -> anyhow::Result<RotationNumber> {
    if text == "golden" {
        return Ok(RotationNumber::golden());
    }
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() == 4 {
        let n: Vec<i64> = parts
            .iter()
            .map(|p| p.parse::<i64>())
            .collect::<Result<_, _>>()
            .map_err(|_| anyhow::anyhow!("surd --alpha must be four integers a,b,d,c"))?;
        return Ok(RotationNumber::QuadraticSurd {
            a: n[0],
            b: n[1],
            d: n[2] as u64,
            c: n[3],
        });
    }
    let value: f64 = text
        .parse()
        .map_err(|_| anyhow::anyhow!("--alpha must be `golden`, a decimal, or a,b,d,c; got {text:?}"))?;
    Ok(RotationNumber::Float { value })
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct GenerateArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub system: SystemArgs,

    #[arg(long = "N", default_value_t = 1024)]
    pub n: usize,

    /// First site of the window
    #[arg(long, default_value_t = 0)]
    pub start: usize,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct AutocorrArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub system: SystemArgs,

    #[arg(long = "N", default_value_t = 1 << 20)]
    pub n: usize,

    #[arg(long, default_value_t = 64)]
    pub max_lag: usize,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct DiffractArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub system: SystemArgs,

    /// Largest window length
    #[arg(long = "N", default_value_t = 1 << 20)]
    pub n: usize,

    /// Periodogram grid size (defaults to N)
    #[arg(long)]
    pub grid: Option<usize>,

    /// Window lengths for the scaling fit (defaults to N/64, N/8, N)
    #[arg(long, value_delimiter = ',')]
    pub sizes: Option<Vec<usize>>,

    /// Number of periodogram peaks tracked
    #[arg(long, default_value_t = 8)]
    pub top: usize,

    /// Skip the full spectrum CSV
    #[arg(long)]
    pub no_spectrum: bool,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct EigenvalueArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub system: SystemArgs,

    #[arg(long = "N", default_value_t = 1 << 20)]
    pub n: usize,

    /// Window lengths (defaults to N/64, N/8, N)
    #[arg(long, value_delimiter = ',')]
    pub sizes: Option<Vec<usize>>,

    /// Candidate eigenvalue θ, as a fraction of a full turn
    #[arg(long, default_value_t = 0.5)]
    pub theta: f64,

    /// `spin`, `indicator:<symbol>`, `dimer-start` or `period-doubling-factor`
    #[arg(long, default_value = "spin")]
    pub observable: String,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct OverlapArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub system: SystemArgs,

    /// Replica window length (defaults: 10^4 for dimers, 2^16 for
    /// period-doubling and paperfolding, 10^5 otherwise)
    #[arg(long = "N")]
    pub n: Option<usize>,

    #[arg(long = "M", default_value_t = 10_000)]
    pub m: usize,

    #[arg(long, default_value_t = 1000)]
    pub triples: usize,

    #[arg(long, default_value_t = 0.02)]
    pub epsilon: f64,

    #[arg(long, default_value_t = 0.01)]
    pub resolution: f64,

    #[arg(long, default_value_t = 0.05)]
    pub min_weight: f64,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct GibbsArgs {
    /// Interaction file; the nearest-neighbor Ising model when omitted
    #[arg(long)]
    pub interaction: Option<PathBuf>,

    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub dimension: u8,

    #[arg(long, default_value_t = 1.0)]
    pub coupling: f64,

    #[arg(long, default_value_t = 0.0)]
    pub field: f64,

    /// Box side length
    #[arg(long = "L", default_value_t = 32)]
    pub l: usize,

    #[arg(long, default_value_t = 0.6)]
    pub beta: f64,

    #[arg(long, default_value = "mixture",
          value_parser = PossibleValuesParser::new(["free", "periodic", "plus", "minus", "mixture"]))]
    pub boundary: String,

    #[arg(long, value_delimiter = ',', default_value = "16")]
    pub distances: Vec<usize>,

    #[arg(long, default_value = "all-translates", value_parser = PossibleValuesParser::new(["all-translates", "centered"]))]
    pub pairs: String,

    #[arg(long, default_value_t = 20_000)]
    pub sweeps: u64,

    #[arg(long, default_value_t = 2_000)]
    pub burn_in: u64,

    #[arg(long, default_value_t = 20)]
    pub batches: usize,

    #[arg(long, default_value = "systematic", value_parser = PossibleValuesParser::new(["systematic", "random"]))]
    pub order: String,

    /// Weight g(X) for the summability report
    #[arg(long, default_value = "constant", value_parser = PossibleValuesParser::new(["constant", "diameter", "cardinality"]))]
    pub weight: String,

    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct ComplexityArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub system: SystemArgs,

    #[arg(long = "N", default_value_t = 1_000_000)]
    pub n: usize,

    #[arg(long, default_value_t = 16)]
    pub n_max: usize,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct ReplayArgs {
    pub manifest: PathBuf,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_round_trips_through_json() {
        let cli = Cli::parse_from([
            "aperiodic", "overlap", "--system", "sturmian", "--alpha", "0.3", "--M", "12", "--seed", "4",
        ]);
        let text = serde_json::to_string(&cli.command).unwrap();
        let back: Command = serde_json::from_str(&text).unwrap();
        assert_eq!(back, cli.command);
        let Command::Overlap(a) = back else { panic!() };
        assert_eq!(a.system.resolve().unwrap().name(), "sturmian");
        assert_eq!(a.n, None);
    }

    #[test]
    fn alpha_forms() {
        assert_eq!(parse_alpha("golden").unwrap(), RotationNumber::golden());
        assert!(parse_alpha("1,1,5,2").unwrap().is_exact());
        assert_eq!(parse_alpha("0.25").unwrap().value(), 0.25);
        assert!(parse_alpha("phi").is_err());
    }
}
