//! Runner for the acceptance criteria: each criterion is timed against
//! its budget and reported on one line.

use std::fmt::Write as _;
use std::process::ExitCode;
use std::time::{Duration, Instant};

/// One measured quantity compared against its threshold.
#[derive(Debug, Clone)]
pub struct Check {
    pub label: String,
    pub value: f64,
    pub passed: bool,
    pub bound: String,
}

impl Check {
    pub fn at_most(label: impl Into<String>, value: f64, limit: f64) -> Self {
        Check {
            label: label.into(),
            value,
            passed: value <= limit,
            bound: format!("<= {limit}"),
        }
    }

    pub fn at_least(label: impl Into<String>, value: f64, limit: f64) -> Self {
        Check {
            label: label.into(),
            value,
            passed: value >= limit,
            bound: format!(">= {limit}"),
        }
    }

    pub fn equals(label: impl Into<String>, value: f64, target: f64) -> Self {
        Check {
            label: label.into(),
            value,
            passed: value == target,
            bound: format!("== {target}"),
        }
    }

    pub fn within(label: impl Into<String>, value: f64, target: f64, tol: f64) -> Self {
        Check {
            label: label.into(),
            value,
            passed: (value - target).abs() <= tol,
            bound: format!("{target} ± {tol}"),
        }
    }

    pub fn holds(label: impl Into<String>, value: f64, passed: bool, bound: impl Into<String>) -> Self {
        Check {
            label: label.into(),
            value,
            passed,
            bound: bound.into(),
        }
    }
}

fn show(v: f64) -> String {
    if v != 0.0 && v.abs() < 1e-3 {
        format!("{v:.3e}")
    } else {
        format!("{v:.6}")
    }
}

#[derive(Default)]
pub struct Gate {
    failed: Vec<u32>,
    total: usize,
}

impl Gate {
    pub fn new() -> Self {
        Self::default()
    }

    /// Runs one criterion. It passes when every check passes and the
    /// wall time stays within `budget`.
    pub fn criterion<F>(&mut self, id: u32, title: &str, budget: Duration, run: F)
    where
        F: FnOnce() -> Result<Vec<Check>, String>,
    {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        self.total += 1;
        let mut detail = String::new();
        let passed = match &outcome {
            Ok(checks) => {
                for c in checks {
                    let mark = if c.passed { "ok" } else { "FAILED" };
                    let _ = write!(detail, "\n      {}: {} ({}) {}", c.label, show(c.value), c.bound, mark);
                }
                checks.iter().all(|c| c.passed) && elapsed <= budget
            }
            Err(e) => {
                let _ = write!(detail, "\n      error: {e}");
                false
            }
        };
        let status = if passed { "PASS" } else { "FAIL" };
        println!(
            "{status} criterion {id:>2}: {title} [{:.1} s of {} s]{detail}",
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
        if !passed {
            self.failed.push(id);
        }
    }

    pub fn finish(self) -> ExitCode {
        println!(
            "\n{} of {} criteria passed{}",
            self.total - self.failed.len(),
            self.total,
            if self.failed.is_empty() {
                String::new()
            } else {
                format!("; failing: {:?}", self.failed)
            }
        );
        if self.failed.is_empty() {
            ExitCode::SUCCESS
        } else {
            ExitCode::FAILURE
        }
    }
}
