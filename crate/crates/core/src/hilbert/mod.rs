//! Hilbert series, dimension and multiplicity of monomial ideals.

mod intpoly;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::groebner::MonomialIdeal;
use crate::polyring::Monomial;

pub use intpoly::IntPoly;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HilbertError {
    #[error("the unit ideal has an empty quotient")]
    UnitIdeal,
    #[error("series is not reduced; cancel factors of (1 - z) first")]
    NotReduced,
    #[error("brute-force enumeration of {0} monomials refused")]
    TooLarge(u128),
}

/// `numerator / (1 - z)^denominator` for a quotient of a polynomial ring in
/// `nvars` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSeries {
    pub numerator: IntPoly,
    pub denominator: usize,
    pub nvars: usize,
}

impl HilbertSeries {
    pub fn new(numerator: IntPoly, denominator: usize, nvars: usize) -> Self {
        HilbertSeries {
            numerator,
            denominator,
            nvars,
        }
    }

    pub fn is_reduced(&self) -> bool {
        self.numerator.is_zero() || !self.numerator.at_one().is_zero() || self.denominator == 0
    }

    /// Cancels common factors `(1 - z)`.
    pub fn reduced(&self) -> HilbertSeries {
        let mut num = self.numerator.clone();
        let mut d = self.denominator;
        while d > 0 && !num.is_zero() {
            match num.div_one_minus_z() {
                Some(q) => {
                    num = q;
                    d -= 1;
                }
                None => break,
            }
        }
        HilbertSeries::new(num, d, self.nvars)
    }

    /// Krull dimension: the pole order at `z = 1`.
    pub fn dimension(&self) -> Result<usize, HilbertError> {
        if self.numerator.is_zero() {
            return Err(HilbertError::UnitIdeal);
        }
        Ok(self.reduced().denominator)
    }

    pub fn codimension(&self) -> Result<usize, HilbertError> {
        Ok(self.nvars - self.dimension()?)
    }

    /// Numerator at `z = 1`; defined on reduced series only.
    pub fn multiplicity(&self) -> Result<BigInt, HilbertError> {
        if self.numerator.is_zero() {
            return Err(HilbertError::UnitIdeal);
        }
        if !self.is_reduced() {
            return Err(HilbertError::NotReduced);
        }
        Ok(self.numerator.at_one())
    }

    /// Coefficients of the reduced numerator.
    pub fn h_vector(&self) -> Vec<BigInt> {
        self.reduced().numerator.coeffs().to_vec()
    }

    /// Coefficient of `z^d` in the power-series expansion.
    pub fn coefficient(&self, d: usize) -> BigInt {
        let m = self.denominator;
        self.numerator
            .coeffs()
            .iter()
            .enumerate()
            .take(d + 1)
            .map(|(i, c)| {
                if m == 0 {
                    if i == d {
                        c.clone()
                    } else {
                        BigInt::zero()
                    }
                } else {
                    c * binomial(d - i + m - 1, m - 1)
                }
            })
            .sum()
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertReport {
    pub dimension: usize,
    pub codimension: usize,
    pub h_vector: Vec<String>,
    pub multiplicity: String,
    pub numerator_coeffs: Vec<String>,
}

impl HilbertReport {
    pub fn from_series(raw: &HilbertSeries) -> Result<Self, HilbertError> {
        let red = raw.reduced();
        Ok(HilbertReport {
            dimension: red.dimension()?,
            codimension: red.codimension()?,
            h_vector: red.h_vector().iter().map(ToString::to_string).collect(),
            multiplicity: red.multiplicity()?.to_string(),
            numerator_coeffs: raw.numerator.coeffs().iter().map(ToString::to_string).collect(),
        })
    }
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.exponents().cmp(b.exponents())));
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for m in gens {
        if !out.iter().any(|g| g.divides(&m)) {
            out.push(m);
        }
    }
    out
}

fn numerator_rec(gens: &[Monomial], nvars: usize) -> IntPoly {
    if gens.is_empty() {
        return IntPoly::one();
    }
    if gens.iter().any(Monomial::is_one) {
        return IntPoly::zero();
    }
    let coprime = gens
        .iter()
        .enumerate()
        .all(|(a, g)| gens[a + 1..].iter().all(|h| g.is_coprime(h)));
    if coprime {
        return gens.iter().fold(IntPoly::one(), |acc, g| {
            acc.mul(&IntPoly::one().sub(&IntPoly::monomial(BigInt::one(), g.degree() as usize)))
        });
    }
    // pivot: variable occurring in most generators, lowest index on ties
    let mut counts = vec![0usize; nvars];
    for g in gens {
        for (v, _) in g.support() {
            counts[v] += 1;
        }
    }
    let pivot = (0..nvars).max_by(|&a, &b| counts[a].cmp(&counts[b]).then(b.cmp(&a))).unwrap();
    let x = Monomial::variable(nvars, pivot);
    // I + (x): generators free of x, times (1 - z)
    let without: Vec<Monomial> = gens.iter().filter(|g| g.exponent(pivot) == 0).cloned().collect();
    // I : x
    let colon: Vec<Monomial> = minimalize(
        gens.iter()
            .map(|g| x.quotient_of(g).unwrap_or_else(|| g.clone()))
            .collect(),
    );
    let (a, b) = if gens.len() > 24 {
        rayon::join(|| numerator_rec(&without, nvars), || numerator_rec(&colon, nvars))
    } else {
        (numerator_rec(&without, nvars), numerator_rec(&colon, nvars))
    };
    let one_minus_z = IntPoly::from_i64s(&[1, -1]);
    a.mul(&one_minus_z).add(&b.shift(1))
}

/// Hilbert series of `K[x_1..x_N] / I` over `(1 - z)^N`, unreduced.
pub fn hilbert_numerator(ideal: &MonomialIdeal) -> HilbertSeries {
    let n = ideal.nvars();
    HilbertSeries::new(numerator_rec(ideal.gens(), n), n, n)
}

/// Krull dimension via a minimum set of variables meeting every generator.
pub fn dimension(ideal: &MonomialIdeal) -> Result<usize, HilbertError> {
    if ideal.is_unit() {
        return Err(HilbertError::UnitIdeal);
    }
    let supports: Vec<u64> = ideal
        .gens()
        .iter()
        .map(|g| g.support().fold(0u64, |acc, (v, _)| acc | (1 << v)))
        .collect();
    if ideal.nvars() > 64 {
        // fall back to the series
        return hilbert_numerator(ideal).dimension();
    }
    let mut best = ideal.nvars();
    hitting_set(&supports, 0, 0, &mut best);
    Ok(ideal.nvars() - best)
}

fn hitting_set(supports: &[u64], chosen: u64, size: usize, best: &mut usize) {
    if size >= *best {
        return;
    }
    let open = supports
        .iter()
        .filter(|&&s| s & chosen == 0)
        .min_by_key(|s| s.count_ones());
    match open {
        None => *best = size,
        Some(&s) => {
            let mut bits = s;
            while bits != 0 {
                let v = bits.trailing_zeros();
                bits &= bits - 1;
                hitting_set(supports, chosen | (1 << v), size + 1, best);
            }
        }
    }
}

/// Number of degree-`d` monomials outside `ideal`, by enumeration.
pub fn standard_monomial_count(ideal: &MonomialIdeal, d: u32) -> Result<u128, HilbertError> {
    const LIMIT: u128 = 10_000_000;
    let n = ideal.nvars();
    if n == 0 {
        return Ok(u128::from(d == 0 && !ideal.is_unit()));
    }
    let total = {
        let (top, k) = (n as u128 + d as u128 - 1, d as u128);
        (0..k).fold(1u128, |acc, i| acc * (top - i) / (i + 1))
    };
    if total > LIMIT {
        return Err(HilbertError::TooLarge(total));
    }
    let mut mon = Monomial::one(n);
    let mut count = 0u128;
    enumerate(ideal, &mut mon, 0, d, &mut count);
    Ok(count)
}

fn enumerate(ideal: &MonomialIdeal, mon: &mut Monomial, from: usize, left: u32, count: &mut u128) {
    if ideal.contains(mon) {
        return;
    }
    if left == 0 {
        *count += 1;
        return;
    }
    let n = mon.nvars();
    for v in from..n {
        let e = mon.exponent(v);
        mon.set_exponent(v, e + 1);
        enumerate(ideal, mon, v, left - 1, count);
        mon.set_exponent(v, e);
    }
}
