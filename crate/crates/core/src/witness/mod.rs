//! Explicit points of jet schemes and the checks that separate components.

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::pfaffian::{colex_subsets, pfaffian, sub_pfaffian, PfaffianError, SkewMatrix, TruncPoly, TruncRing};
use crate::polyring::{CommRing, Field, PrimeField};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WitnessError {
    #[error("parameters out of range: {0}")]
    BadParameters(String),
    #[error("entry ({i},{j}) has a term of degree >= {k}")]
    EntryTooLong { i: usize, j: usize, k: usize },
    #[error("point is not on the jet scheme of 4-pfaffians")]
    NotOnVariety,
    #[error(transparent)]
    Pfaffian(#[from] PfaffianError),
}

/// A `k`-jet of an `n x n` skew matrix: entries are polynomials in `t` of degree `< k`.
#[derive(Clone, Debug, PartialEq)]
pub struct JetPoint<F: Field> {
    k: usize,
    field: F,
    entries: SkewMatrix<TruncPoly<F::Elem>>,
}

impl<F: Field> JetPoint<F> {
    /// `entry(i, j)` gives the coefficients of the `(i,j)` entry, `i < j`.
    pub fn new(
        n: usize,
        k: usize,
        field: F,
        mut entry: impl FnMut(usize, usize) -> Vec<F::Elem>,
    ) -> Result<Self, WitnessError> {
        if k == 0 {
            return Err(WitnessError::BadParameters("k must be positive".into()));
        }
        let ring = TruncRing::new(field.clone(), k);
        let mut bad = None;
        let entries = SkewMatrix::from_fn(n, |i, j| {
            let cs = entry(i, j);
            if cs.iter().skip(k).any(|c| !field.is_zero(c)) && bad.is_none() {
                bad = Some((i, j));
            }
            ring.from_coeffs(cs)
        });
        if let Some((i, j)) = bad {
            return Err(WitnessError::EntryTooLong { i, j, k });
        }
        Ok(JetPoint { k, field, entries })
    }

    pub fn zero(n: usize, k: usize, field: F) -> Self {
        JetPoint::new(n, k, field, |_, _| Vec::new()).expect("zero entries")
    }

    pub fn size(&self) -> usize {
        self.entries.size()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    /// Coefficient of `t^h` in entry `(i,j)`, `i < j`.
    pub fn coordinate(&self, i: usize, j: usize, h: usize) -> F::Elem {
        self.entries
            .upper(i, j)
            .coeffs()
            .get(h)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn entries(&self) -> &SkewMatrix<TruncPoly<F::Elem>> {
        &self.entries
    }

    /// Simultaneous row/column permutation: entry `(a,b)` of the result is entry
    /// `(perm[a-1], perm[b-1])` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> JetPoint<F> {
        let ring = TruncRing::new(self.field.clone(), self.k);
        let entries = SkewMatrix::from_fn(self.size(), |a, b| self.entries.get(&ring, perm[a - 1], perm[b - 1]));
        JetPoint {
            k: self.k,
            field: self.field.clone(),
            entries,
        }
    }

    /// Pfaffian of the whole matrix kept up to `t^(2k-1)`.
    pub fn extended_pfaffian(&self) -> Result<TruncPoly<F::Elem>, WitnessError> {
        let ring = TruncRing::new(self.field.clone(), 2 * self.k);
        Ok(pfaffian(&ring, &self.entries)?)
    }

    /// Whether every `x^(h)` with `h <= s` vanishes.
    pub fn in_y(&self, s: usize) -> bool {
        (1..=self.size()).all(|i| (i + 1..=self.size()).all(|j| (0..=s).all(|h| self.field.is_zero(&self.coordinate(i, j, h)))))
    }
}

/// Whether all `2r`-pfaffians of `p` vanish modulo `t^k`.
pub fn on_variety<F: Field>(p: &JetPoint<F>, r: usize) -> Result<bool, WitnessError> {
    if r == 0 || 2 * r > p.size() {
        return Err(WitnessError::BadParameters(format!("2r = {} exceeds n = {}", 2 * r, p.size())));
    }
    let ring = TruncRing::new(p.field.clone(), p.k);
    for rows in colex_subsets(p.size(), 2 * r) {
        if !ring.is_zero(&sub_pfaffian(&ring, &p.entries, &rows)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The `6 x 6` point with entries `t^l`, `t^(l+1)` (odd `k`) or `t^l` (even
/// `k`), and `t^(k-1)` in positions (1,2), (3,4), (5,6), where `l = floor(k/2)`.
pub fn crux2_witness<F: Field>(k: usize, field: F) -> Result<JetPoint<F>, WitnessError> {
    if k < 2 {
        return Err(WitnessError::BadParameters(format!("k must be at least 2, got {k}")));
    }
    let ell = k / 2;
    let middle = if k % 2 == 1 { ell + 1 } else { ell };
    let one = field.one();
    let power = |e: usize| {
        let mut cs = vec![field.zero(); e];
        cs.push(one.clone());
        cs
    };
    JetPoint::new(6, k, field.clone(), |i, j| match (i, j) {
        (1, 2) => power(ell),
        (3, 4) => power(middle),
        (5, 6) => power(k - 1),
        _ => Vec::new(),
    })
}

/// Necessary condition for a point of the 4-pfaffian jet scheme of `6 x 6`
/// matrices to lie in the closure of the locus where some `x^(0)` is nonzero:
/// the 6-pfaffian vanishes in degrees `k..2k-1` as well. `false` certifies the
/// point lies outside that closure; `true` proves nothing.
pub fn z0_obstruction<F: Field>(p: &JetPoint<F>) -> Result<bool, WitnessError> {
    if p.size() != 6 {
        return Err(WitnessError::BadParameters(format!("expected a 6 x 6 point, got {}", p.size())));
    }
    if !on_variety(p, 2)? {
        return Err(WitnessError::NotOnVariety);
    }
    let pf = p.extended_pfaffian()?;
    let ring = TruncRing::new(p.field.clone(), 2 * p.k);
    for h in p.k..2 * p.k {
        if !p.field.is_zero(&ring.coeff_t(&pf, h)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A random point `u v^T - v u^T` (truncated mod `t^k`) over a prime field;
/// rank two, so it lies on the 4-pfaffian jet scheme. Resampled until the
/// constant term of entry (5,6) is nonzero.
pub fn sample_rank_two_point(n: usize, k: usize, field: PrimeField, rng: &mut impl Rng) -> Result<JetPoint<PrimeField>, WitnessError> {
    if n < 6 || k == 0 {
        return Err(WitnessError::BadParameters(format!("need n >= 6 and k >= 1, got n={n} k={k}")));
    }
    let ring = TruncRing::new(field, k);
    loop {
        let mut vec_sample = || -> Vec<TruncPoly<u32>> {
            (0..n)
                .map(|_| ring.from_coeffs((0..k).map(|_| rng.gen_range(0..field.modulus()))))
                .collect()
        };
        let (u, v) = (vec_sample(), vec_sample());
        let entry = |i: usize, j: usize| ring.sub(&ring.mul(&u[i - 1], &v[j - 1]), &ring.mul(&v[i - 1], &u[j - 1]));
        if ring.coeff_t(&entry(5, 6), 0)? == 0 {
            continue;
        }
        return JetPoint::new(n, k, field, |i, j| entry(i, j).into_coeffs());
    }
}

/// Summary of the checks on a witness point.
#[derive(Clone, Debug, Serialize)]
pub struct WitnessReport {
    pub k: usize,
    pub matrix: Vec<Vec<String>>,
    pub pfaffian: String,
    pub on_variety: bool,
    pub in_y: Vec<usize>,
    pub z0_condition_holds: bool,
    pub outside_z0: bool,
}

fn format_tpoly<F: Field>(field: &F, coeffs: &[F::Elem]) -> String {
    let mut parts = Vec::new();
    for (h, c) in coeffs.iter().enumerate() {
        if field.is_zero(c) {
            continue;
        }
        let (num, den) = field.to_ratio(c);
        let coeff = if den == 1.into() { num.to_string() } else { format!("{num}/{den}") };
        let body = match (h, coeff.as_str()) {
            (0, _) => coeff.clone(),
            (1, "1") => "t".into(),
            (_, "1") => format!("t^{h}"),
            (1, _) => format!("{coeff}*t"),
            _ => format!("{coeff}*t^{h}"),
        };
        parts.push(body);
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

impl WitnessReport {
    pub fn for_point<F: Field>(p: &JetPoint<F>) -> Result<Self, WitnessError> {
        let ring = TruncRing::new(p.field.clone(), p.k);
        let n = p.size();
        let matrix = (1..=n)
            .map(|i| {
                (1..=n)
                    .map(|j| format_tpoly(&p.field, p.entries.get(&ring, i, j).coeffs()))
                    .collect()
            })
            .collect();
        let pf = p.extended_pfaffian()?;
        let on = on_variety(p, 2)?;
        let z0 = if on { z0_obstruction(p)? } else { false };
        Ok(WitnessReport {
            k: p.k,
            matrix,
            pfaffian: format_tpoly(&p.field, pf.coeffs()),
            on_variety: on,
            in_y: (0..p.k).filter(|&s| p.in_y(s)).collect(),
            z0_condition_holds: z0,
            outside_z0: on && !z0,
        })
    }
}

#[cfg(test)]
mod tests;
