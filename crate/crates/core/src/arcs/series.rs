use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::Rational;
use crate::error::{Error, Result};

/// Precision used when two exact series divide without terminating.
pub const EXACT_DIVISION_PRECISION: usize = 64;

/// Order of vanishing of a series at `t = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Valuation {
    Finite(i64),
    /// Identically zero (exactly, or to the full modeled truncation).
    Infinite,
    /// Zero as far as known: at least this value, undecided beyond.
    AtLeast(i64),
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            _ => None,
        }
    }

    /// A lower bound usable in precision bookkeeping.
    fn lower_bound(self) -> usize {
        match self {
            Valuation::Finite(v) | Valuation::AtLeast(v) => v.max(0) as usize,
            Valuation::Infinite => usize::MAX / 4,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
            Valuation::AtLeast(v) => write!(f, ">={v}"),
        }
    }
}

/// A power series in `t` known modulo `t^precision` (or exactly, for
/// polynomials). Precision is tracked through arithmetic, so products of
/// series with positive valuation keep more absolute precision than their
/// factors.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
    precision: Option<usize>,
}

impl TruncatedSeries {
    /// `coeffs[i]` is the coefficient of `t^i`; known modulo `t^precision`.
    pub fn new(mut coeffs: Vec<Rational>, precision: usize) -> Self {
        coeffs.truncate(precision);
        Self::trimmed(coeffs, Some(precision))
    }

    pub fn exact(coeffs: Vec<Rational>) -> Self {
        Self::trimmed(coeffs, None)
    }

    fn trimmed(mut coeffs: Vec<Rational>, precision: Option<usize>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        TruncatedSeries { coeffs, precision }
    }

    pub fn constant(c: Rational) -> Self {
        Self::exact(vec![c])
    }

    pub fn zero() -> Self {
        Self::exact(Vec::new())
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// `t^k`, exact.
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![Rational::zero(); k + 1];
        c[k] = Rational::one();
        Self::exact(c)
    }

    pub fn precision(&self) -> Option<usize> {
        self.precision
    }

    pub fn is_exact(&self) -> bool {
        self.precision.is_none()
    }

    /// Coefficient of `t^i`; `None` when `i` is beyond the known precision.
    pub fn coefficient(&self, i: usize) -> Option<Rational> {
        if self.precision.is_some_and(|p| i >= p) {
            return None;
        }
        Some(self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero))
    }

    /// Known coefficients (trailing zeros trimmed).
    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn valuation(&self) -> Valuation {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(v) => Valuation::Finite(v as i64),
            None => match self.precision {
                None => Valuation::Infinite,
                Some(p) => Valuation::AtLeast(p as i64),
            },
        }
    }

    /// Drops everything at and beyond `t^p`.
    pub fn truncate(&self, p: usize) -> Self {
        let prec = Some(self.precision.map_or(p, |q| q.min(p)));
        let mut c = self.coeffs.clone();
        c.truncate(p);
        Self::trimmed(c, prec)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::trimmed(Vec::new(), self.precision);
        }
        Self::trimmed(self.coeffs.iter().map(|x| x * c).collect(), self.precision)
    }

    pub fn add(&self, other: &Self) -> Self {
        let prec = min_prec(self.precision, other.precision);
        let len = cap(self.coeffs.len().max(other.coeffs.len()), prec);
        let coeffs = (0..len)
            .map(|i| {
                let a = self.coeffs.get(i);
                let b = other.coeffs.get(i);
                match (a, b) {
                    (Some(a), Some(b)) => a + b,
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.clone(),
                    (None, None) => Rational::zero(),
                }
            })
            .collect();
        Self::trimmed(coeffs, prec)
    }

    pub fn neg(&self) -> Self {
        Self::trimmed(self.coeffs.iter().map(|c| -c).collect(), self.precision)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Precision `min(P_a + v_b, P_b + v_a)`.
    pub fn mul(&self, other: &Self) -> Self {
        let va = self.valuation().lower_bound();
        let vb = other.valuation().lower_bound();
        let pa = self.precision.map(|p| p.saturating_add(vb));
        let pb = other.precision.map(|p| p.saturating_add(va));
        let prec = min_prec(pa, pb);
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::trimmed(Vec::new(), prec);
        }
        let len = cap(self.coeffs.len() + other.coeffs.len() - 1, prec);
        let mut out = vec![Rational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() || i >= len {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Self::trimmed(out, prec)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `self / other`; requires `v(self) ≥ v(other)` with `v(other)` finite.
    /// Precision `min(P_a − v_b, P_b − 2v_b + v_a)`.
    pub fn div(&self, other: &Self) -> Result<Self> {
        self.div_or(other, EXACT_DIVISION_PRECISION)
    }

    /// As `div`, with `fallback` as the precision of a non-terminating
    /// quotient of two exact series.
    pub fn div_or(&self, other: &Self, fallback: usize) -> Result<Self> {
        let vb = match other.valuation() {
            Valuation::Finite(v) => v as usize,
            _ => return Err(Error::Argument("division by a series with no known nonzero coefficient".into())),
        };
        let va = self.valuation();
        if let Valuation::Finite(a) = va {
            if (a as usize) < vb {
                return Err(Error::NonLiftableDivision {
                    numerator: a,
                    denominator: vb as i64,
                });
            }
        }
        let va = va.lower_bound();
        let pa = match self.precision {
            Some(p) if p < vb => {
                return Err(Error::InsufficientPrecision { required: vb + 1 });
            }
            Some(p) => Some(p - vb),
            None => None,
        };
        let pb = other.precision.map(|p| (p + va).saturating_sub(2 * vb));
        let prec = match min_prec(pa, pb) {
            Some(p) => Some(p),
            None => {
                // both exact: exact if the division terminates
                if let Some(q) = exact_quotient(&self.coeffs, &other.coeffs) {
                    return Ok(Self::exact(q));
                }
                Some(fallback)
            }
        };
        let len = prec.expect("finite here");
        let a: Vec<Rational> = (0..len).map(|i| self.coeffs.get(i + vb).cloned().unwrap_or_else(Rational::zero)).collect();
        let b: Vec<Rational> = (0..len).map(|i| other.coeffs.get(i + vb).cloned().unwrap_or_else(Rational::zero)).collect();
        let inv_b0 = b[0].recip();
        let mut q = vec![Rational::zero(); len];
        for i in 0..len {
            let mut acc = a[i].clone();
            for j in 1..=i {
                if !b[j].is_zero() && !q[i - j].is_zero() {
                    acc -= &b[j] * &q[i - j];
                }
            }
            q[i] = acc * &inv_b0;
        }
        Ok(Self::trimmed(q, prec))
    }

    /// `self(other(t))`; requires `v(other) ≥ 1`. Truncating `self` at
    /// `t^P` costs `O(t^{P·v(other)})`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        let vb = other.valuation().lower_bound();
        if vb == 0 {
            return Err(Error::Argument("composition needs an inner series without constant term".into()));
        }
        let limit = self.precision.map(|p| p.saturating_mul(vb));
        let mut acc = Self::constant(self.coeffs.first().cloned().unwrap_or_else(Rational::zero));
        let mut power = Self::one();
        for c in self.coeffs.iter().skip(1) {
            power = power.mul(other);
            if let Some(l) = limit {
                power = power.truncate(l);
            }
            if !c.is_zero() {
                acc = acc.add(&power.scale(c));
            }
        }
        Ok(match limit {
            Some(l) => acc.truncate(l),
            None => acc,
        })
    }

    /// Coefficients agree below `p` (or below both precisions, whichever is smaller).
    pub fn agrees_with(&self, other: &Self, p: usize) -> bool {
        let limit = [Some(p), self.precision, other.precision].into_iter().flatten().min().unwrap();
        (0..limit).all(|i| self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero) == other.coeffs.get(i).cloned().unwrap_or_else(Rational::zero))
    }
}

fn min_prec(a: Option<usize>, b: Option<usize>) -> Option<usize> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (Some(x), None) | (None, Some(x)) => Some(x),
        (None, None) => None,
    }
}

fn cap(len: usize, prec: Option<usize>) -> usize {
    prec.map_or(len, |p| len.min(p))
}

fn exact_quotient(a: &[Rational], b: &[Rational]) -> Option<Vec<Rational>> {
    let db = b.iter().rposition(|c| !c.is_zero())?;
    if a.is_empty() {
        return Some(Vec::new());
    }
    let mut rem = a.to_vec();
    if rem.len() < b.len() {
        return None;
    }
    let mut q = vec![Rational::zero(); rem.len() - db];
    for i in (0..q.len()).rev() {
        let c = &rem[i + db] / &b[db];
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate().take(db + 1) {
                rem[i + j] -= &c * bj;
            }
        }
        q[i] = c;
    }
    if rem.iter().all(|c| c.is_zero()) {
        Some(q)
    } else {
        None
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{i}"),
            };
            let coef = if c.is_one() && i > 0 {
                String::new()
            } else if *c == -Rational::one() && i > 0 {
                "-".into()
            } else if i > 0 {
                format!("{c}*")
            } else {
                c.to_string()
            };
            parts.push(format!("{coef}{mono}"));
        }
        let mut s = if parts.is_empty() { "0".to_string() } else { parts.join(" + ").replace("+ -", "- ") };
        if let Some(p) = self.precision {
            s.push_str(&format!(" + O(t^{p})"));
        }
        write!(f, "{s}")
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
