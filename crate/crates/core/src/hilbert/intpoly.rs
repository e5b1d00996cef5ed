//! Dense univariate polynomials in `z` with big-integer coefficients.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Coefficients in ascending degree, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        IntPoly::new(vec![c])
    }

    /// `c * z^e`.
    pub fn monomial(c: BigInt, e: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); e];
        coeffs.push(c);
        IntPoly::new(coeffs)
    }

    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        IntPoly::new(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `1 + z + ... + z^(m-1)`.
    pub fn geometric(m: usize) -> Self {
        IntPoly::new(vec![BigInt::one(); m])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn eval(&self, z: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * z + c)
    }

    pub fn at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        IntPoly::new((0..len).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        IntPoly::new((0..len).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn pow(&self, e: u32) -> IntPoly {
        (0..e).fold(IntPoly::one(), |acc, _| acc.mul(self))
    }

    /// Multiplies by `z^e`.
    pub fn shift(&self, e: usize) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); e];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    /// Divides by `z^e` when every coefficient below `z^e` vanishes.
    pub fn unshift(&self, e: usize) -> Option<IntPoly> {
        if self.coeffs.iter().take(e).any(|c| !c.is_zero()) {
            return None;
        }
        Some(IntPoly::new(self.coeffs.iter().skip(e).cloned().collect()))
    }

    /// Exact quotient by `other`, or `None` when the division leaves a
    /// remainder or a non-integral coefficient.
    pub fn div_exact(&self, other: &IntPoly) -> Option<IntPoly> {
        let lead = other.coeffs.last()?;
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        let dd = other.coeffs.len() - 1;
        if self.coeffs.len() - 1 < dd {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); rem.len() - dd];
        for i in (0..q.len()).rev() {
            let top = &rem[i + dd];
            if top.is_zero() {
                continue;
            }
            let (c, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, oc) in other.coeffs.iter().enumerate() {
                rem[i + j] -= &c * oc;
            }
            q[i] = c;
        }
        rem.iter().all(Zero::is_zero).then(|| IntPoly::new(q))
    }

    /// Quotient by `1 - z` when `self(1) = 0`.
    pub fn div_one_minus_z(&self) -> Option<IntPoly> {
        if !self.at_one().is_zero() {
            return None;
        }
        // p = (1 - z) q  <=>  q_i = sum_{j<=i} p_j
        let mut acc = BigInt::zero();
        let mut q = Vec::with_capacity(self.coeffs.len());
        for c in self.coeffs.iter().take(self.coeffs.len().saturating_sub(1)) {
            acc += c;
            q.push(acc.clone());
        }
        Some(IntPoly::new(q))
    }

    pub fn is_palindromic(&self) -> bool {
        self.coeffs.iter().eq(self.coeffs.iter().rev())
    }

    pub fn all_positive(&self) -> bool {
        self.coeffs.iter().all(Signed::is_positive)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "z")?,
                (1, false) => write!(f, "{mag}z")?,
                (_, true) => write!(f, "z^{i}")?,
                (_, false) => write!(f, "{mag}z^{i}")?,
            }
        }
        Ok(())
    }
}
