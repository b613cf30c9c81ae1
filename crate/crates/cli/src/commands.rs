use std::path::{Path, PathBuf};

use aperiodic::correlation::{autocorrelation, ObservableSpec};
use aperiodic::export;
use aperiodic::gibbs::{
    magnetization_mc, pair_correlation_mc, summability_norm, symmetric_mixture_correlation, Boundary,
    GibbsChain, InitialState, InteractionSpec, LatticeBox, PairMode, RunLength, SweepOrder, WeightFunction,
};
use aperiodic::overlap::{
    sample_overlap_distribution, sampler_for, synthetic_uniform_triples, ultrametricity_from_triples,
    ultrametricity_test,
};
use aperiodic::seeds::derive;
use aperiodic::spectra::{bragg_scan, dynamical_eigenvalue, periodogram, ClassificationBands};
use aperiodic::symbolic::{entropy_estimate, factor_map, BlockMap};
use aperiodic::{SequenceWindow, System};
use anyhow::{bail, Context, Result};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::args::*;

pub const SCHEMA_VERSION: u32 = 1;
pub const MANIFEST: &str = "manifest.json";

/// Collects output files and writes the manifest that references them.
struct Outputs {
    dir: PathBuf,
    files: Vec<Value>,
}

impl Outputs {
    fn new(dir: &Path) -> Result<Self> {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        Ok(Outputs {
            dir: dir.to_path_buf(),
            files: Vec::new(),
        })
    }

    fn write(&mut self, name: &str, bytes: &[u8]) -> Result<()> {
        let path = self.dir.join(name);
        std::fs::write(&path, bytes).with_context(|| format!("writing {}", path.display()))?;
        let digest = Sha256::digest(bytes);
        let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
        self.files.push(json!({ "file": name, "sha256": hex, "bytes": bytes.len() }));
        Ok(())
    }

    fn csv(&mut self, name: &str, fill: impl FnOnce(&mut Vec<u8>) -> aperiodic::Result<()>) -> Result<()> {
        let mut buf = Vec::new();
        fill(&mut buf)?;
        self.write(name, &buf)
    }

    fn json(&mut self, name: &str, value: &Value) -> Result<()> {
        let mut text = serde_json::to_string_pretty(value)?;
        text.push('\n');
        self.write(name, text.as_bytes())
    }

    fn finish(self, command: &Command, resolved: Value) -> Result<PathBuf> {
        let manifest = json!({
            "schema_version": SCHEMA_VERSION,
            "tool": "aperiodic",
            "tool_version": env!("CARGO_PKG_VERSION"),
            "config": command,
            "resolved": resolved,
            "outputs": self.files,
        });
        let path = self.dir.join(MANIFEST);
        let mut text = serde_json::to_string_pretty(&manifest)?;
        text.push('\n');
        std::fs::write(&path, text)?;
        Ok(path)
    }
}

fn require_seed(seed: Option<u64>, what: &str) -> Result<u64> {
    seed.with_context(|| format!("{what} is stochastic; pass --seed so the run can be reproduced"))
}

fn system_window(args: &SystemArgs, n: usize) -> Result<(System, SequenceWindow)> {
    let system = args.resolve()?;
    let seed = if system.is_stochastic() {
        Some(require_seed(args.seed, system.name())?)
    } else {
        None
    };
    let window = system.window(n, seed)?;
    Ok((system, window))
}

fn scaling_sizes(n: usize, sizes: &Option<Vec<usize>>) -> Vec<usize> {
    sizes.clone().unwrap_or_else(|| vec![n / 64, n / 8, n])
}

/// Runs one subcommand into `out`, returning the manifest path.
pub fn run(command: &Command, out: &Path) -> Result<PathBuf> {
    if let Command::Replay(r) = command {
        let text = std::fs::read_to_string(&r.manifest).with_context(|| format!("reading {}", r.manifest.display()))?;
        let manifest: Value = serde_json::from_str(&text)?;
        let config: Command = serde_json::from_value(manifest["config"].clone()).context("manifest config")?;
        return run(&config, out);
    }
    let mut outputs = Outputs::new(out)?;
    let resolved = match command {
        Command::Generate(a) => generate(a, &mut outputs)?,
        Command::Autocorr(a) => autocorr(a, &mut outputs)?,
        Command::Diffract(a) => diffract(a, &mut outputs)?,
        Command::Eigenvalue(a) => eigenvalue(a, &mut outputs)?,
        Command::Overlap(a) => overlap(a, &mut outputs)?,
        Command::Gibbs(a) => gibbs(a, &mut outputs)?,
        Command::Complexity(a) => complexity(a, &mut outputs)?,
        Command::Replay(_) => unreachable!(),
    };
    outputs.finish(command, resolved)
}

fn generate(a: &GenerateArgs, out: &mut Outputs) -> Result<Value> {
    let (system, full) = system_window(&a.system, a.start + a.n)?;
    let w = full.slice(a.start, a.n, a.start as i64)?;
    out.csv("window.csv", |b| export::write_window(b, &w))?;
    if a.n <= 1 << 16 {
        println!("{}", w.render());
    }
    Ok(json!({ "system": system, "provenance": w.provenance() }))
}

fn autocorr(a: &AutocorrArgs, out: &mut Outputs) -> Result<Value> {
    let (system, w) = system_window(&a.system, a.n)?;
    let gamma = autocorrelation(&w, a.max_lag)?;
    out.csv("autocorr.csv", |b| export::write_autocorrelation(b, &gamma))?;
    Ok(json!({ "system": system }))
}

fn diffract(a: &DiffractArgs, out: &mut Outputs) -> Result<Value> {
    let system = a.system.resolve()?;
    let seed = if system.is_stochastic() {
        Some(require_seed(a.system.seed, system.name())?)
    } else {
        None
    };
    let grid = a.grid.unwrap_or(a.n);
    let sizes = scaling_sizes(a.n, &a.sizes);
    let generator = |n: usize| system.window(n, seed);
    let report = bragg_scan(system.name(), generator, &sizes, grid, a.top, ClassificationBands::default())?;
    if !a.no_spectrum {
        let spectrum = periodogram(&system.window(a.n, seed)?, grid)?;
        out.csv("spectrum.csv", |b| export::write_spectrum(b, &spectrum))?;
    }
    out.csv("bragg_moduli.csv", |b| export::write_bragg_moduli(b, &report))?;
    out.json("bragg.json", &serde_json::to_value(&report)?)?;
    for p in &report.peaks {
        println!("k = {:.6}  I = {:.6}  exponent = {:+.3}  {:?}", p.k, p.intensity, p.exponent, p.class);
    }
    Ok(json!({ "system": system, "sizes": sizes, "grid": grid }))
}

pub const OBSERVABLES: [&str; 4] = ["spin", "indicator:<symbol>", "dimer-start", "period-doubling-factor"];

fn observable_window(w: &SequenceWindow, name: &str) -> Result<(SequenceWindow, ObservableSpec)> {
    Ok(match name {
        "spin" => (w.clone(), ObservableSpec::spin()),
        "dimer-start" => (factor_map(w, &BlockMap::dimer_start())?, ObservableSpec::spin()),
        "period-doubling-factor" => (
            factor_map(w, &BlockMap::thue_morse_to_period_doubling())?,
            ObservableSpec::spin(),
        ),
        other => match other.strip_prefix("indicator:") {
            Some(label) => {
                let s = w.alphabet().index_of(label).with_context(|| {
                    format!("symbol {label:?} not in alphabet {:?}", w.alphabet().symbols())
                })?;
                (w.clone(), ObservableSpec::indicator(s))
            }
            None => bail!("unknown observable {other:?}; valid: {}", OBSERVABLES.join(", ")),
        },
    })
}

fn eigenvalue(a: &EigenvalueArgs, out: &mut Outputs) -> Result<Value> {
    let sizes = scaling_sizes(a.n, &a.sizes);
    let (system, full) = system_window(&a.system, *sizes.iter().max().context("empty --sizes")?)?;
    let mut rows = Vec::new();
    let mut csv = String::from("N,theta,modulus\n");
    for &n in &sizes {
        let (w, obs) = observable_window(&full.prefix(n)?, &a.observable)?;
        let r = dynamical_eigenvalue(&w, &obs, a.theta)?;
        csv.push_str(&format!("{},{},{}\n", n, r.theta, r.modulus));
        println!("N = {n}  |c| = {:.6}", r.modulus);
        rows.push(r);
    }
    out.write("eigenvalue.csv", csv.as_bytes())?;
    out.json("eigenvalue.json", &serde_json::to_value(&rows)?)?;
    Ok(json!({ "system": system, "sizes": sizes }))
}

fn default_overlap_len(system: &System) -> usize {
    match system {
        System::Dimer { .. } => 10_000,
        System::PeriodDoubling | System::Paperfolding => 1 << 16,
        _ => 100_000,
    }
}

fn overlap(a: &OverlapArgs, out: &mut Outputs) -> Result<Value> {
    let system = a.system.resolve()?;
    let seed = require_seed(a.system.seed, "replica sampling")?;
    let n = a.n.unwrap_or_else(|| default_overlap_len(&system));
    let sampler = sampler_for(&system, n)?;
    let dist = sample_overlap_distribution(sampler.as_ref(), a.m, derive(seed, 0))?;
    let atoms = dist.atom_scan(a.resolution, a.min_weight);
    let ultra = ultrametricity_test(sampler.as_ref(), a.triples, a.epsilon, derive(seed, 1))?;
    let control = ultrametricity_from_triples(&synthetic_uniform_triples(a.triples, 0.5, derive(seed, 2)), a.epsilon)?;
    out.csv("overlaps.csv", |b| export::write_overlaps(b, &dist))?;
    out.csv("ecdf.csv", |b| export::write_ecdf(b, &dist))?;
    let report = json!({
        "sampler": sampler.name(),
        "N": n,
        "M": dist.m(),
        "mean": dist.mean(),
        "std_dev": dist.std_dev(),
        "resolution": a.resolution,
        "min_weight": a.min_weight,
        "atoms": atoms,
        "ultrametricity": ultra,
        "negative_control": control,
    });
    out.json("overlap.json", &report)?;
    println!(
        "{}: M = {}, N = {}, sd = {:.4}, {} atom(s), violation fraction {:.3}",
        sampler.name(),
        dist.m(),
        n,
        dist.std_dev(),
        atoms.len(),
        ultra.violation_fraction
    );
    Ok(json!({ "system": system, "N": n, "seed": seed }))
}

fn gibbs(a: &GibbsArgs, out: &mut Outputs) -> Result<Value> {
    let seed = require_seed(a.seed, "Monte Carlo sampling")?;
    let interaction = match &a.interaction {
        Some(path) => InteractionSpec::from_path(path)?,
        None => InteractionSpec::ising(a.dimension, a.coupling, a.field)?,
    };
    let dims = if interaction.dimension() == 1 {
        LatticeBox::line(a.l)
    } else {
        LatticeBox::square(a.l)
    };
    let run = RunLength {
        sweeps: a.sweeps,
        burn_in: a.burn_in,
        batches: a.batches,
    };
    let mode = if a.pairs == "centered" {
        PairMode::Centered
    } else {
        PairMode::AllTranslates
    };
    let weight = WeightFunction::from_name(&a.weight).context("unknown weight")?;
    let summability = summability_norm(&interaction, &weight);
    let thickness = interaction.range();

    let (correlations, extra) = if a.boundary == "mixture" {
        let r = symmetric_mixture_correlation(&interaction, dims, a.beta, (0, 1), &a.distances, mode, &run, seed)?;
        let extra = json!({
            "plus_magnetization": r.plus_magnetization,
            "minus_magnetization": r.minus_magnetization,
            "mixture_magnetization": r.mixture_magnetization,
        });
        (r.correlations, extra)
    } else {
        let (boundary, initial) = match a.boundary.as_str() {
            "free" => (Boundary::Free, InitialState::Random),
            "periodic" => (Boundary::Periodic, InitialState::Random),
            "plus" => (Boundary::uniform(0, thickness), InitialState::Uniform { state: 0 }),
            _ => (Boundary::uniform(1, thickness), InitialState::Uniform { state: 1 }),
        };
        let order = if a.order == "random" {
            SweepOrder::Random
        } else {
            SweepOrder::Systematic
        };
        let mut chain = GibbsChain::new(&interaction, dims, &boundary, a.beta, derive(seed, 0), &initial)?.with_order(order);
        let c = pair_correlation_mc(&mut chain, &a.distances, mode, &run)?;
        let m = magnetization_mc(&mut chain, &run)?;
        (c, json!({ "magnetization": m }))
    };
    out.csv("correlations.csv", |b| export::write_correlations(b, &correlations))?;
    out.json(
        "gibbs.json",
        &json!({
            "boundary": a.boundary,
            "beta": a.beta,
            "box": dims,
            "correlations": correlations,
            "summability": summability,
            "observables": extra,
        }),
    )?;
    for c in &correlations {
        println!("f({}) = {:.4} ± {:.4}", c.n, c.estimate.mean, c.estimate.std_error);
    }
    Ok(json!({ "interaction": interaction, "seed": seed }))
}

fn complexity(a: &ComplexityArgs, out: &mut Outputs) -> Result<Value> {
    let (system, w) = system_window(&a.system, a.n)?;
    let profile = entropy_estimate(&w, a.n_max)?;
    out.csv("entropy.csv", |b| export::write_entropy(b, &profile))?;
    out.json("complexity.json", &serde_json::to_value(&profile)?)?;
    if let Some(last) = profile.points.last() {
        println!("p({}) = {}  ln p(n)/n = {:.4}", last.n, last.complexity, last.block_entropy);
    }
    Ok(json!({ "system": system }))
}
