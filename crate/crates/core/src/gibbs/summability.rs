use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::interaction::{Decay, InteractionSpec, Offset, Term};

/// g(X) ≥ 1 on finite supports.
#[derive(Clone)]
pub enum WeightFunction {
    Constant,
    /// max(1, largest Euclidean distance within X).
    Diameter,
    Cardinality,
    /// A user weight. `growth` is the declared exponent a with
    /// g({0, n}) ~ n^a, used only for the tail remainder.
    Custom {
        name: String,
        g: Arc<dyn Fn(&[Offset]) -> f64 + Send + Sync>,
        growth: f64,
    },
}

impl fmt::Debug for WeightFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl WeightFunction {
    pub const NAMES: [&'static str; 3] = ["constant", "diameter", "cardinality"];

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "constant" => Some(WeightFunction::Constant),
            "diameter" => Some(WeightFunction::Diameter),
            "cardinality" => Some(WeightFunction::Cardinality),
            _ => None,
        }
    }

    pub fn name(&self) -> String {
        match self {
            WeightFunction::Constant => "constant".into(),
            WeightFunction::Diameter => "diameter".into(),
            WeightFunction::Cardinality => "cardinality".into(),
            WeightFunction::Custom { name, .. } => name.clone(),
        }
    }

    pub fn weight(&self, support: &[Offset]) -> f64 {
        match self {
            WeightFunction::Constant => 1.0,
            WeightFunction::Cardinality => support.len() as f64,
            WeightFunction::Diameter => {
                let mut d2 = 0i64;
                for a in support {
                    for b in support {
                        let (dx, dy) = ((a[0] - b[0]) as i64, (a[1] - b[1]) as i64);
                        d2 = d2.max(dx * dx + dy * dy);
                    }
                }
                (d2 as f64).sqrt().max(1.0)
            }
            WeightFunction::Custom { g, .. } => g(support),
        }
    }

    fn pair_growth(&self, cutoff: usize) -> (f64, f64) {
        match self {
            WeightFunction::Constant => (0.0, 1.0),
            WeightFunction::Cardinality => (0.0, 2.0),
            WeightFunction::Diameter => (1.0, 1.0),
            WeightFunction::Custom { g, growth, .. } => {
                let k = cutoff.max(1);
                (*growth, g(&[[0, 0], [k as i32, 0]]) / (k as f64).powf(*growth))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    /// Finite term list: the sum is exact.
    Finite,
    Convergent,
    Divergent,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummabilityReport {
    pub weight: String,
    /// Σ_{0∈X} ‖Φ_X‖ g(X) over the finite terms only.
    pub finite_part: f64,
    /// Exact sum over all supports kept, tail included up to its cutoff.
    pub partial_sum: f64,
    /// Bounds on the discarded tail beyond the cutoff.
    pub remainder_lower: f64,
    pub remainder_upper: Option<f64>,
    pub verdict: Verdict,
}

impl SummabilityReport {
    /// Bounds on the full sum, when it converges.
    pub fn bounds(&self) -> Option<(f64, f64)> {
        match self.verdict {
            Verdict::Divergent => None,
            _ => Some((
                self.partial_sum + self.remainder_lower,
                self.partial_sum + self.remainder_upper.unwrap_or(f64::INFINITY),
            )),
        }
    }
}

/// Canonical translate of a support: sorted, first element at the origin.
fn canonical(offsets: &[Offset]) -> Vec<Offset> {
    let mut v = offsets.to_vec();
    v.sort();
    let o = v[0];
    v.iter().map(|a| [a[0] - o[0], a[1] - o[1]]).collect()
}

/// Σ over distinct supports X ∋ 0 of ‖Φ_X‖ g(X), where terms on the same
/// support are merged before taking the sup norm.
fn grouped_sum(terms: &[Term], q: usize, g: &WeightFunction) -> f64 {
    let mut groups: BTreeMap<Vec<Offset>, Vec<&Term>> = BTreeMap::new();
    for t in terms {
        groups.entry(canonical(t.offsets())).or_default().push(t);
    }
    let mut total = 0.0;
    for (support, members) in groups {
        let norm = if members.len() == 1 {
            members[0].norm()
        } else {
            let k = support.len();
            let mut combined = vec![0.0; q.pow(k as u32)];
            for t in members {
                let shift = *t.offsets().iter().min().unwrap();
                let perm: Vec<usize> = t
                    .offsets()
                    .iter()
                    .map(|o| {
                        let c = [o[0] - shift[0], o[1] - shift[1]];
                        support.iter().position(|s| *s == c).unwrap()
                    })
                    .collect();
                for (code, e) in combined.iter_mut().enumerate() {
                    let digit = |p: usize| (code / q.pow((k - 1 - p) as u32)) % q;
                    let tcode = perm.iter().fold(0, |acc, &p| acc * q + digit(p));
                    *e += t.energy(tcode);
                }
            }
            combined.iter().fold(0.0f64, |m, e| m.max(e.abs()))
        };
        total += support.len() as f64 * norm * g.weight(&support);
    }
    total
}

/// The summability norm Σ_{0∈X} ‖Φ_X‖ g(X). A declared tail is summed to
/// its cutoff, and the discarded remainder is bounded analytically from
/// the decay class; divergence is reported, not raised.
pub fn summability_norm(interaction: &InteractionSpec, g: &WeightFunction) -> SummabilityReport {
    let q = interaction.q();
    let finite_part = grouped_sum(interaction.terms(), q, g);
    let partial_sum = grouped_sum(&interaction.compiled_terms(), q, g);
    let mut report = SummabilityReport {
        weight: g.name(),
        finite_part,
        partial_sum,
        remainder_lower: 0.0,
        remainder_upper: Some(0.0),
        verdict: Verdict::Finite,
    };
    let Some(tail) = interaction.tail() else {
        return report;
    };
    let spins = interaction.alphabet().spin_map().unwrap_or(&[]);
    let smax = spins.iter().fold(0.0f64, |m, v| m.max(v * v));
    let k = tail.cutoff as f64;
    let (a, c) = g.pair_growth(tail.cutoff);
    let b = 2.0 * tail.amplitude.abs() * smax * c;
    match tail.decay {
        Decay::Power { exponent } => {
            let e = exponent - a;
            if e <= 1.0 {
                report.verdict = Verdict::Divergent;
                report.remainder_lower = f64::INFINITY;
                report.remainder_upper = None;
            } else {
                report.verdict = Verdict::Convergent;
                report.remainder_lower = b * (k + 1.0).powf(1.0 - e) / (e - 1.0);
                report.remainder_upper = Some(b * k.powf(1.0 - e) / (e - 1.0));
            }
        }
        Decay::Exponential { rate } => {
            report.verdict = Verdict::Convergent;
            let first = b * (k + 1.0).powf(a) * (-rate * (k + 1.0)).exp();
            let ratio = ((k + 2.0) / (k + 1.0)).powf(a) * (-rate).exp();
            report.remainder_lower = first;
            report.remainder_upper = (ratio < 1.0).then(|| first / (1.0 - ratio));
        }
    }
    report
}
