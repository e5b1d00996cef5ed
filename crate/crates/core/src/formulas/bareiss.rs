//! Fraction-free determinants.

use num_bigint::BigInt;

use crate::hilbert::IntPoly;

/// Determinant of a square integer matrix.
pub fn det_int(m: &[Vec<BigInt>]) -> BigInt {
    let lifted: Vec<Vec<IntPoly>> = m
        .iter()
        .map(|row| row.iter().map(|c| IntPoly::constant(c.clone())).collect())
        .collect();
    det_poly(&lifted).coeff(0)
}

/// Determinant of a square matrix over `Z[z]` by Bareiss elimination.
pub fn det_poly(m: &[Vec<IntPoly>]) -> IntPoly {
    let n = m.len();
    if n == 0 {
        return IntPoly::one();
    }
    assert!(m.iter().all(|row| row.len() == n), "square matrix expected");
    let mut a: Vec<Vec<IntPoly>> = m.to_vec();
    let mut negate = false;
    let mut prev = IntPoly::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return IntPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        d.neg()
    } else {
        d
    }
}
