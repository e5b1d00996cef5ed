//! Polynomials in `t` truncated at a fixed bound.

use crate::polyring::CommRing;

use super::PfaffianError;

/// Coefficients `c_0, c_1, ...` of a polynomial in `t`; at most `bound` of them.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncPoly<E> {
    coeffs: Vec<E>,
}

impl<E> TruncPoly<E> {
    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }
}

/// `R[t] / (t^bound)`.
#[derive(Clone, Debug)]
pub struct TruncRing<R> {
    base: R,
    bound: usize,
}

impl<R: CommRing> TruncRing<R> {
    pub fn new(base: R, bound: usize) -> Self {
        assert!(bound >= 1, "truncation bound must be positive");
        TruncRing { base, bound }
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    /// Builds an element, dropping everything at or above the bound.
    pub fn from_coeffs(&self, coeffs: impl IntoIterator<Item = R::Elem>) -> TruncPoly<R::Elem> {
        let mut coeffs: Vec<R::Elem> = coeffs.into_iter().take(self.bound).collect();
        self.trim(&mut coeffs);
        TruncPoly { coeffs }
    }

    /// `c * t^h`, or zero if `h` is past the bound.
    pub fn monomial(&self, c: R::Elem, h: usize) -> TruncPoly<R::Elem> {
        if h >= self.bound {
            return CommRing::zero(self);
        }
        let mut coeffs = vec![self.base.zero(); h];
        coeffs.push(c);
        self.from_coeffs(coeffs)
    }

    pub fn t_pow(&self, h: usize) -> TruncPoly<R::Elem> {
        self.monomial(self.base.one(), h)
    }

    /// Exact coefficient of `t^h`.
    pub fn coeff_t(&self, f: &TruncPoly<R::Elem>, h: usize) -> Result<R::Elem, PfaffianError> {
        if h >= self.bound {
            return Err(PfaffianError::BeyondBound { h, bound: self.bound });
        }
        Ok(f.coeffs.get(h).cloned().unwrap_or_else(|| self.base.zero()))
    }

    /// Lowest `h` with a nonzero coefficient.
    pub fn order(&self, f: &TruncPoly<R::Elem>) -> Option<usize> {
        f.coeffs.iter().position(|c| !self.base.is_zero(c))
    }

    fn trim(&self, coeffs: &mut Vec<R::Elem>) {
        while coeffs.last().is_some_and(|c| self.base.is_zero(c)) {
            coeffs.pop();
        }
    }

    fn zip_with(
        &self,
        a: &TruncPoly<R::Elem>,
        b: &TruncPoly<R::Elem>,
        op: impl Fn(&R::Elem, &R::Elem) -> R::Elem,
    ) -> TruncPoly<R::Elem> {
        let len = a.coeffs.len().max(b.coeffs.len());
        let zero = self.base.zero();
        let coeffs = (0..len)
            .map(|h| op(a.coeffs.get(h).unwrap_or(&zero), b.coeffs.get(h).unwrap_or(&zero)))
            .collect::<Vec<_>>();
        self.from_coeffs(coeffs)
    }
}

impl<R: CommRing> CommRing for TruncRing<R> {
    type Elem = TruncPoly<R::Elem>;

    fn zero(&self) -> Self::Elem {
        TruncPoly { coeffs: Vec::new() }
    }
    fn one(&self) -> Self::Elem {
        self.from_coeffs([self.base.one()])
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.coeffs.iter().all(|c| self.base.is_zero(c))
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.zip_with(a, b, |x, y| self.base.add(x, y))
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.zip_with(a, b, |x, y| self.base.sub(x, y))
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        TruncPoly {
            coeffs: a.coeffs.iter().map(|c| self.base.neg(c)).collect(),
        }
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if a.coeffs.is_empty() || b.coeffs.is_empty() {
            return self.zero();
        }
        let len = (a.coeffs.len() + b.coeffs.len() - 1).min(self.bound);
        let mut out = vec![self.base.zero(); len];
        for (i, x) in a.coeffs.iter().enumerate() {
            if i >= len || self.base.is_zero(x) {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate().take(len - i) {
                if self.base.is_zero(y) {
                    continue;
                }
                out[i + j] = self.base.add(&out[i + j], &self.base.mul(x, y));
            }
        }
        self.from_coeffs(out)
    }
}
