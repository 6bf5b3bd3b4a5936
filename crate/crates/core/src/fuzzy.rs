//! Triangular fuzzy numbers and their componentwise arithmetic.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A triangular fuzzy number `(lo, mid, hi)` with `lo <= mid <= hi`.
///
/// Serialized as a three-element array `[lo, mid, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 3]", into = "[f64; 3]")]
pub struct TriFuzzy {
    lo: f64,
    mid: f64,
    hi: f64,
}

/// One of the three crisp slices of a triangular number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Slice {
    Lo,
    Mid,
    Hi,
}

impl Slice {
    pub const ALL: [Slice; 3] = [Slice::Lo, Slice::Mid, Slice::Hi];
}

/// Componentwise operators on triangular numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FuzzyOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl TriFuzzy {
    pub const ZERO: TriFuzzy = TriFuzzy { lo: 0.0, mid: 0.0, hi: 0.0 };

    pub fn new(lo: f64, mid: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && mid.is_finite() && hi.is_finite()) {
            return Err(Error::Domain(format!("non-finite triangular number ({lo}, {mid}, {hi})")));
        }
        if lo > mid || mid > hi {
            return Err(Error::Domain(format!("unordered triangular number ({lo}, {mid}, {hi})")));
        }
        Ok(TriFuzzy { lo, mid, hi })
    }

    /// A crisp number embedded as `(c, c, c)`.
    pub fn crisp(c: f64) -> Self {
        TriFuzzy { lo: c, mid: c, hi: c }
    }

    /// Builds a number from three arbitrary values, sorting them ascending.
    pub fn sorted(a: f64, b: f64, c: f64) -> Self {
        let mut v = [a, b, c];
        v.sort_by(f64::total_cmp);
        TriFuzzy { lo: v[0], mid: v[1], hi: v[2] }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn mid(&self) -> f64 {
        self.mid
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn at(&self, slice: Slice) -> f64 {
        match slice {
            Slice::Lo => self.lo,
            Slice::Mid => self.mid,
            Slice::Hi => self.hi,
        }
    }

    pub fn is_crisp(&self) -> bool {
        self.lo == self.mid && self.mid == self.hi
    }

    /// Applies `op` slice by slice and re-sorts the result so the ordering
    /// invariant survives subtraction and division.
    pub fn combine(self, other: TriFuzzy, op: FuzzyOp) -> Result<TriFuzzy> {
        let f = |x: f64, y: f64| match op {
            FuzzyOp::Add => x + y,
            FuzzyOp::Sub => x - y,
            FuzzyOp::Mul => x * y,
            FuzzyOp::Div => x / y,
        };
        if op == FuzzyOp::Div {
            for (name, v) in [("lo", other.lo), ("mid", other.mid), ("hi", other.hi)] {
                if v == 0.0 {
                    return Err(Error::DivisionByZero(name));
                }
            }
        }
        Ok(TriFuzzy::sorted(
            f(self.lo, other.lo),
            f(self.mid, other.mid),
            f(self.hi, other.hi),
        ))
    }

    /// Multiplies every component by a nonnegative scalar.
    pub fn scale(self, c: f64) -> Result<TriFuzzy> {
        if !(c >= 0.0) || !c.is_finite() {
            return Err(Error::Domain(format!("scale factor must be a nonnegative real, got {c}")));
        }
        Ok(TriFuzzy { lo: c * self.lo, mid: c * self.mid, hi: c * self.hi })
    }
}

impl TryFrom<[f64; 3]> for TriFuzzy {
    type Error = Error;

    fn try_from(v: [f64; 3]) -> Result<Self> {
        TriFuzzy::new(v[0], v[1], v[2])
    }
}

impl From<TriFuzzy> for [f64; 3] {
    fn from(t: TriFuzzy) -> Self {
        [t.lo, t.mid, t.hi]
    }
}

/// Free-function form of [`TriFuzzy::combine`].
pub fn tri_combine(a: TriFuzzy, b: TriFuzzy, op: FuzzyOp) -> Result<TriFuzzy> {
    a.combine(b, op)
}

/// Free-function form of [`TriFuzzy::scale`].
pub fn tri_scale(a: TriFuzzy, c: f64) -> Result<TriFuzzy> {
    a.scale(c)
}
