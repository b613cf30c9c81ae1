use serde::{Deserialize, Serialize};

use super::alphabet::Alphabet;
use super::window::{GeneratorSpec, SequenceWindow};
use crate::error::{invalid, Result};

/// Rotation number of a Sturmian word.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum RotationNumber {
    /// Double precision; adequate away from convergent denominators.
    Float { value: f64 },
    /// `(a + b·√d) / c`, evaluated with exact integer floors.
    QuadraticSurd { a: i64, b: i64, d: u64, c: i64 },
}

impl RotationNumber {
    /// 2 − τ = (3 − √5)/2, the frequency of `b` in the Fibonacci word.
    pub const fn golden() -> Self {
        RotationNumber::QuadraticSurd {
            a: 3,
            b: -1,
            d: 5,
            c: 2,
        }
    }

    pub fn value(&self) -> f64 {
        match *self {
            RotationNumber::Float { value } => value,
            RotationNumber::QuadraticSurd { a, b, d, c } => {
                (a as f64 + b as f64 * (d as f64).sqrt()) / c as f64
            }
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, RotationNumber::QuadraticSurd { .. })
    }

    /// Rational to working precision: exactly rational for surds with a
    /// perfect-square radicand, or within 1e-14 of a fraction with
    /// denominator at most 10^6 for floats.
    pub fn is_rational(&self) -> bool {
        match *self {
            RotationNumber::QuadraticSurd { b, d, .. } => {
                b == 0 || isqrt(d as u128).pow(2) == d as u128
            }
            RotationNumber::Float { value } => float_convergents(value, 64)
                .into_iter()
                .any(|(p, q)| q <= 1_000_000 && (value - p as f64 / q as f64).abs() <= 1e-14),
        }
    }

    /// Integer part and fractional part of `n·α`.
    pub(crate) fn split(&self, n: i64) -> (i64, f64) {
        match *self {
            RotationNumber::Float { value } => {
                let x = n as f64 * value;
                let fl = x.floor();
                let mut frac = x - fl;
                let mut int = fl as i64;
                if frac >= 1.0 {
                    frac -= 1.0;
                    int += 1;
                }
                (int, frac)
            }
            RotationNumber::QuadraticSurd { a, b, d, c } => {
                let nb = n as i128 * b as i128;
                let (m, r) = surd_floor(nb, d);
                let k = n as i128 * a as i128 + m;
                let c = c as i128;
                let mut q = k.div_euclid(c);
                let mut frac = (k.rem_euclid(c) as f64 + r) / c as f64;
                if frac >= 1.0 {
                    frac -= 1.0;
                    q += 1;
                }
                (q as i64, frac)
            }
        }
    }

    /// Continued-fraction convergents `p/q` of α.
    pub fn convergents(&self, count: usize) -> Vec<(i128, i128)> {
        match *self {
            RotationNumber::Float { value } => float_convergents(value, count),
            RotationNumber::QuadraticSurd { a, b, d, c } => {
                let partials = surd_partial_quotients(a, b, d, c, count);
                convergents_from(&partials)
            }
        }
    }
}

pub(crate) fn isqrt(v: u128) -> u128 {
    let mut r = (v as f64).sqrt() as u128;
    while r * r > v {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= v {
        r += 1;
    }
    r
}

/// floor(x) and x − floor(x) for x = nb·√d. The fractional part is formed
/// from the exact integer numerator `nb²d − m²`, so it keeps full relative
/// precision however large `n` gets.
fn surd_floor(nb: i128, d: u64) -> (i128, f64) {
    let v = (nb * nb) as u128 * d as u128;
    let s = isqrt(v);
    let rem = v - s * s;
    let root = (v as f64).sqrt();
    let up = if rem == 0 {
        0.0
    } else {
        rem as f64 / (root + s as f64)
    };
    if nb >= 0 {
        (s as i128, up)
    } else if rem == 0 {
        (-(s as i128), 0.0)
    } else {
        (-(s as i128) - 1, 1.0 - up)
    }
}

fn surd_partial_quotients(a: i64, b: i64, d: u64, c: i64, count: usize) -> Vec<i128> {
    // Normalize to (p + √disc)/q with q | disc − p².
    let sign = if b < 0 { -1i128 } else { 1 };
    let mut disc = (b as i128 * b as i128) * d as i128;
    let mut p = sign * a as i128;
    let mut q = sign * c as i128;
    if (disc - p * p) % q != 0 {
        p *= q.abs();
        disc *= q * q;
        q *= q.abs();
    }
    let root = isqrt(disc as u128) as i128;
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        if q == 0 {
            break;
        }
        let num = if q > 0 { p + root } else { p + root + 1 };
        let a_k = num.div_euclid(q);
        out.push(a_k);
        p = a_k * q - p;
        let next = disc - p * p;
        if next == 0 {
            break;
        }
        q = next / q;
    }
    out
}

fn float_convergents(value: f64, count: usize) -> Vec<(i128, i128)> {
    let mut partials = Vec::new();
    let mut x = value;
    for _ in 0..count {
        let a = x.floor();
        partials.push(a as i128);
        let frac = x - a;
        if frac < 1e-15 || partials.len() >= 40 {
            break;
        }
        x = 1.0 / frac;
        if !x.is_finite() || x > 1e15 {
            break;
        }
    }
    convergents_from(&partials)
}

fn convergents_from(partials: &[i128]) -> Vec<(i128, i128)> {
    let (mut p0, mut q0, mut p1, mut q1) = (1i128, 0i128, 0i128, 1i128);
    partials
        .iter()
        .map(|&a| {
            let (p, q) = (a * p0 + p1, a * q0 + q1);
            (p1, q1, p0, q0) = (p0, q0, p, q);
            (p, q)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SturmianParams {
    pub alpha: RotationNumber,
    pub beta: f64,
    /// Required to accept a rational α.
    #[serde(default)]
    pub periodic: bool,
}

impl SturmianParams {
    pub fn new(alpha: RotationNumber, beta: f64) -> Result<Self> {
        let p = SturmianParams {
            alpha,
            beta,
            periodic: false,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn periodic(alpha: RotationNumber, beta: f64) -> Result<Self> {
        let p = SturmianParams {
            alpha,
            beta,
            periodic: true,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn golden(beta: f64) -> Result<Self> {
        SturmianParams::new(RotationNumber::golden(), beta)
    }

    pub fn validate(&self) -> Result<()> {
        let a = self.alpha.value();
        if !(a > 0.0 && a < 1.0) {
            return Err(invalid("alpha", format!("{a} is not in (0, 1)")));
        }
        if let RotationNumber::QuadraticSurd { c, .. } = self.alpha {
            if c == 0 {
                return Err(invalid("alpha", "zero denominator"));
            }
        }
        if !(0.0..1.0).contains(&self.beta) {
            return Err(invalid("beta", format!("{} is not in [0, 1)", self.beta)));
        }
        if !self.periodic && self.alpha.is_rational() {
            return Err(invalid(
                "alpha",
                format!("{a} is rational to working precision; set the periodic flag"),
            ));
        }
        Ok(())
    }
}

/// Precomputed `n·α` splits for a fixed index range; evaluating a word for
/// a new phase β is then a single pass. Replica samplers reuse one table
/// across thousands of phases.
#[derive(Debug, Clone)]
pub struct RotationTable {
    alpha: RotationNumber,
    start: i64,
    steps: Vec<u8>,
    fracs: Vec<f64>,
}

impl RotationTable {
    pub fn new(alpha: RotationNumber, start: i64, len: usize) -> Self {
        let mut steps = Vec::with_capacity(len);
        let mut fracs = Vec::with_capacity(len + 1);
        let (mut prev, f0) = alpha.split(start);
        fracs.push(f0);
        for i in 1..=len as i64 {
            let (q, f) = alpha.split(start + i);
            steps.push((q - prev) as u8);
            fracs.push(f);
            prev = q;
        }
        RotationTable {
            alpha,
            start,
            steps,
            fracs,
        }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    pub fn alpha(&self) -> RotationNumber {
        self.alpha
    }

    /// s_n = ⌊(n+1)α+β⌋ − ⌊nα+β⌋ over the table's range.
    pub fn word(&self, beta: f64) -> Vec<u8> {
        let carry = |f: f64| u8::from(f + beta >= 1.0);
        let mut out = Vec::with_capacity(self.steps.len());
        let mut prev = carry(self.fracs[0]);
        for (i, &step) in self.steps.iter().enumerate() {
            let next = carry(self.fracs[i + 1]);
            let s = step as i8 + next as i8 - prev as i8;
            debug_assert!(s == 0 || s == 1, "floor difference out of range");
            out.push(s.clamp(0, 1) as u8);
            prev = next;
        }
        out
    }
}

pub fn sturmian_alphabet() -> Alphabet {
    Alphabet::with_spins(["0", "1"], vec![-1.0, 1.0]).expect("static alphabet")
}

/// Sturmian word over sites `start..start + len`.
pub fn sturmian_range(params: &SturmianParams, start: i64, len: usize) -> Result<SequenceWindow> {
    params.validate()?;
    if len == 0 {
        return Err(invalid("N", "must be at least 1"));
    }
    let table = RotationTable::new(params.alpha, start, len);
    Ok(SequenceWindow::from_parts(
        table.word(params.beta),
        sturmian_alphabet(),
        start,
        GeneratorSpec::Sturmian {
            params: *params,
            start,
            len,
        },
    ))
}

/// s_n for n = 0..N−1; symbols 0/1 with spins −1/+1.
pub fn sturmian_word(params: &SturmianParams, n: usize) -> Result<SequenceWindow> {
    sturmian_range(params, 0, n)
}
