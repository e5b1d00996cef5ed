//! Closed formulas and predictors for pfaffian jet ideals.

mod bareiss;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::hilbert::{HilbertSeries, IntPoly};
use crate::polyring::VarId;

pub use bareiss::{det_int, det_poly};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FormulaError {
    #[error("parameters out of range: {0}")]
    BadParameters(String),
    #[error("determinant is not divisible by z^{0}")]
    InexactShift(usize),
}

fn check_rank(n: usize, r: usize) -> Result<(), FormulaError> {
    if r == 0 || 2 * r > n {
        return Err(FormulaError::BadParameters(format!("need 1 <= r and 2r <= n, got n={n} r={r}")));
    }
    Ok(())
}

/// Number of variables `n(n-1)/2` of one jet level.
pub fn level_vars(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Exact binomial coefficients from a cached Pascal triangle; zero outside `0 <= k <= n`.
#[derive(Clone, Debug)]
pub struct BinomialTable {
    rows: Vec<Vec<BigInt>>,
}

impl BinomialTable {
    pub fn new(max_n: usize) -> Self {
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(max_n + 1);
        for n in 0..=max_n {
            let mut row = vec![BigInt::one(); n + 1];
            for k in 1..n {
                row[k] = &rows[n - 1][k - 1] + &rows[n - 1][k];
            }
            rows.push(row);
        }
        BinomialTable { rows }
    }

    pub fn get(&self, n: i64, k: i64) -> BigInt {
        if n < 0 || k < 0 || k > n {
            return BigInt::zero();
        }
        let (n, k) = (n as usize, k as usize);
        match self.rows.get(n) {
            Some(row) => row[k].clone(),
            None => crate::hilbert::binomial(n, k),
        }
    }
}

/// `(r-1)(2n-2r+1)`.
pub fn classical_dimension(n: usize, r: usize) -> Result<usize, FormulaError> {
    check_rank(n, r)?;
    Ok((r - 1) * (2 * n - 2 * r + 1))
}

/// Degree of the variety of skew matrices of rank `< 2r`, as an `(r-1) x (r-1)` determinant.
pub fn classical_multiplicity(n: usize, r: usize) -> Result<BigInt, FormulaError> {
    check_rank(n, r)?;
    let m = r - 1;
    let table = BinomialTable::new(2 * n + 2);
    let (n, r) = (n as i64, r as i64);
    let top = 2 * n - 4 * r + 2;
    let mat: Vec<Vec<BigInt>> = (1..=m as i64)
        .map(|i| {
            (1..=m as i64)
                .map(|j| table.get(top, n - 2 * r - i + j + 1) - table.get(top, n - 2 * r - i - j + 1))
                .collect()
        })
        .collect();
    Ok(det_int(&mat))
}

/// Reduced Hilbert series of the classical pfaffian quotient `R^{n,1}_r`.
pub fn classical_hilbert_series(n: usize, r: usize) -> Result<HilbertSeries, FormulaError> {
    let dim = classical_dimension(n, r)?;
    let m = r - 1;
    let table = BinomialTable::new(2 * n + 2);
    let base = (n - 2 * r) as i64;
    let entry = |i: i64, j: i64| -> IntPoly {
        let top = (base + i + j + 1) as usize;
        IntPoly::new(
            (0..=top as i64)
                .map(|k| {
                    table.get(base + j, k) * table.get(base + i, k)
                        - table.get(base + j + i - 1, k - 1) * table.get(base + 1, k + 1)
                })
                .collect(),
        )
    };
    let mat: Vec<Vec<IntPoly>> = (1..=m as i64).map(|i| (1..=m as i64).map(|j| entry(i, j)).collect()).collect();
    let det = det_poly(&mat);
    let shift = if m >= 2 { m * (m - 1) / 2 } else { 0 };
    let numerator = det.unshift(shift).ok_or(FormulaError::InexactShift(shift))?;
    Ok(HilbertSeries::new(numerator, dim, level_vars(n)))
}

/// Reduced series `(1 + z + ... + z^(r-1))^k / (1-z)^(k(n(n-1)/2 - 1))` for `n = 2r`.
pub fn ci_hilbert_series(n: usize, k: usize) -> Result<HilbertSeries, FormulaError> {
    if n < 2 || n % 2 == 1 || k == 0 {
        return Err(FormulaError::BadParameters(format!("need even n >= 2 and k >= 1, got n={n} k={k}")));
    }
    let r = n / 2;
    let numerator = IntPoly::geometric(r).pow(k as u32);
    let vars = k * level_vars(n);
    Ok(HilbertSeries::new(numerator, vars - k, vars))
}

/// Leading monomial of `p^(h)` for `h = 0..k-1`, `n = 2r`, as lists of variables.
pub fn ci_leading_terms(n: usize, k: usize) -> Result<Vec<Vec<VarId>>, FormulaError> {
    if n < 2 || n % 2 == 1 {
        return Err(FormulaError::BadParameters(format!("need even n >= 2, got {n}")));
    }
    let r = n / 2;
    Ok((0..k)
        .map(|h| {
            let (q, t) = (h / r, h % r);
            let mut vars: Vec<VarId> = (1..=r - t).map(|a| VarId::jet(a, 2 * r - 2 * t + 1 - a, q)).collect();
            vars.extend((1..=t).map(|b| VarId::jet(2 * r - 2 * t + b, 2 * r + 1 - b, q + 1)));
            vars
        })
        .collect())
}

/// Codimensions `Z_0, .., Z_{l-1}, Y_{l-1}` for `r = 2`, `l = floor(k/2)`.
fn r2_codims(n: usize, k: usize) -> Vec<(String, u64)> {
    let ell = k / 2;
    let (a, big) = (((n - 2) * (n - 3) / 2) as u64, level_vars(n) as u64);
    let mut out: Vec<(String, u64)> = (0..ell)
        .map(|s| (format!("Z_{s}"), (k - 2 * s) as u64 * a + s as u64 * big))
        .collect();
    let y = ell as u64 * big + if k % 2 == 1 { a } else { 0 };
    out.push((format!("Y_{}", ell - 1), y));
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    pub label: String,
    pub codim: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentReport {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub ell: usize,
    pub components: Vec<Component>,
    pub smallest: String,
    pub pure: bool,
    pub count_lower_bound: u64,
    pub count_exact: bool,
}

impl ComponentReport {
    pub fn min_codim(&self) -> u64 {
        self.components.iter().map(|c| c.codim).min().unwrap_or(0)
    }
}

/// Components of the jet scheme of 4-pfaffians for `n >= 6`, `k >= 2`.
pub fn component_codims_r2(n: usize, k: usize) -> Result<ComponentReport, FormulaError> {
    if n < 6 || k < 2 {
        return Err(FormulaError::BadParameters(format!("need n >= 6 and k >= 2, got n={n} k={k}")));
    }
    let codims = r2_codims(n, k);
    let min = codims.iter().map(|c| c.1).min().unwrap();
    let smallest = codims.iter().find(|c| c.1 == min).unwrap().0.clone();
    let pure = codims.iter().all(|c| c.1 == min);
    let bound = component_count_lower_bound(n, k, 2)?;
    Ok(ComponentReport {
        n,
        k,
        r: 2,
        ell: k / 2,
        components: codims.into_iter().map(|(label, codim)| Component { label, codim }).collect(),
        smallest,
        pure,
        count_lower_bound: bound.lower,
        count_exact: bound.exact,
    })
}

/// Predicted codimension of the jet ideal, where a closed form is known.
pub fn predicted_codim(n: usize, k: usize, r: usize) -> Result<Option<u64>, FormulaError> {
    check_rank(n, r)?;
    if k == 0 {
        return Err(FormulaError::BadParameters("k must be positive".into()));
    }
    let k64 = k as u64;
    Ok(if r == 1 {
        Some(k64 * level_vars(n) as u64)
    } else if n == 2 * r {
        Some(k64)
    } else if n == 2 * r + 1 {
        Some(3 * k64)
    } else if k == 1 {
        Some((level_vars(n) - classical_dimension(n, r)?) as u64)
    } else if r == 2 && n >= 6 {
        Some(component_codims_r2(n, k)?.min_codim())
    } else {
        None
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentBound {
    pub lower: u64,
    /// The count is known to equal `lower`.
    pub exact: bool,
}

/// Lower bound on the number of irreducible components of the jet scheme.
pub fn component_count_lower_bound(n: usize, k: usize, r: usize) -> Result<ComponentBound, FormulaError> {
    check_rank(n, r)?;
    if k == 0 {
        return Err(FormulaError::BadParameters("k must be positive".into()));
    }
    Ok(if n <= 2 * r + 1 || r == 1 || k == 1 {
        ComponentBound { lower: 1, exact: true }
    } else if n <= 2 * r + 3 {
        ComponentBound { lower: 2, exact: false }
    } else {
        ComponentBound {
            lower: (k / 2 + 1) as u64,
            exact: r == 2,
        }
    })
}

#[cfg(test)]
mod tests;
