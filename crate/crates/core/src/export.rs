//! CSV writers with fixed headers for plot-ready output.

use std::io::Write;

use crate::correlation::Autocorrelation;
use crate::error::Result;
use crate::gibbs::PairCorrelation;
use crate::overlap::EmpiricalOverlapDistribution;
use crate::spectra::{BraggReport, SpectralEstimate};
use crate::symbolic::{EntropyProfile, SequenceWindow};

/// `index,symbol,spin`; index is the lattice site, spin empty when the
/// alphabet has no numeric encoding.
pub fn write_window<W: Write>(out: W, window: &SequenceWindow) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["index", "symbol", "spin"])?;
    let a = window.alphabet();
    for (i, &s) in window.symbols().iter().enumerate() {
        let spin = a.spin(s).map(|v| v.to_string()).unwrap_or_default();
        w.write_record([(window.offset() + i as i64).to_string(), a.label(s).to_string(), spin])?;
    }
    w.flush()?;
    Ok(())
}

/// `lag,gamma,N`.
pub fn write_autocorrelation<W: Write>(out: W, gamma: &Autocorrelation) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["lag", "gamma", "N"])?;
    for (lag, g) in gamma.values.iter().enumerate() {
        w.write_record([lag.to_string(), g.to_string(), gamma.n.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

/// `k,intensity,N` with the per-site periodogram as intensity.
pub fn write_spectrum<W: Write>(out: W, spectrum: &SpectralEstimate) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["k", "intensity", "N"])?;
    for (j, p) in spectrum.per_site.iter().enumerate() {
        w.write_record([spectrum.k(j).to_string(), p.to_string(), spectrum.n.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

/// `k,N,modulus` for every peak and size of a report.
pub fn write_bragg_moduli<W: Write>(out: W, report: &BraggReport) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["k", "N", "modulus"])?;
    for p in &report.peaks {
        for (n, m) in &p.moduli {
            w.write_record([p.k.to_string(), n.to_string(), m.to_string()])?;
        }
    }
    w.flush()?;
    Ok(())
}

/// `index,q,seed1,seed2` in draw order.
pub fn write_overlaps<W: Write>(out: W, dist: &EmpiricalOverlapDistribution) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["index", "q", "seed1", "seed2"])?;
    for r in dist.records() {
        w.write_record([r.index.to_string(), r.q.to_string(), r.seed1.to_string(), r.seed2.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

/// `q,ecdf` at each distinct sample value.
pub fn write_ecdf<W: Write>(out: W, dist: &EmpiricalOverlapDistribution) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["q", "ecdf"])?;
    let s = dist.sorted();
    let m = s.len() as f64;
    for i in 0..s.len() {
        if i + 1 == s.len() || s[i + 1] != s[i] {
            w.write_record([s[i].to_string(), ((i + 1) as f64 / m).to_string()])?;
        }
    }
    w.flush()?;
    Ok(())
}

/// `n,complexity,block_entropy,corrected,increment`.
pub fn write_entropy<W: Write>(out: W, profile: &EntropyProfile) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["n", "complexity", "block_entropy", "corrected", "increment"])?;
    for p in &profile.points {
        w.write_record([
            p.n.to_string(),
            p.complexity.to_string(),
            p.block_entropy.to_string(),
            p.corrected.to_string(),
            p.increment.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// `n,mean,std_error,batches,samples`.
pub fn write_correlations<W: Write>(out: W, rows: &[PairCorrelation]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["n", "mean", "std_error", "batches", "samples"])?;
    for r in rows {
        let e = &r.estimate;
        w.write_record([
            r.n.to_string(),
            e.mean.to_string(),
            e.std_error.to_string(),
            e.batches.to_string(),
            e.samples.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
