//! Skew-symmetric matrices, pfaffians and the generators of jet ideals.

mod trunc;

use std::sync::Arc;

use thiserror::Error;

use crate::polyring::{make_jet_ring, CommRing, Field, PolyError, PolyRing, Polynomial};

pub use trunc::{TruncPoly, TruncRing};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PfaffianError {
    #[error("pfaffian of a matrix of odd size {0}")]
    OddSize(usize),
    #[error("row set {0:?} is invalid for a matrix of size {1}")]
    BadRows(Vec<usize>, usize),
    #[error("coefficient of t^{h} requested but only {bound} are kept")]
    BeyondBound { h: usize, bound: usize },
    #[error("2r = {two_r} exceeds n = {n}")]
    RankTooLarge { two_r: usize, n: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Skew-symmetric matrix stored by its strict upper triangle. Indices are 1-based.
#[derive(Clone, Debug, PartialEq)]
pub struct SkewMatrix<E> {
    n: usize,
    upper: Vec<E>,
}

impl<E: Clone> SkewMatrix<E> {
    /// `entry(i, j)` is called for `1 <= i < j <= n`.
    pub fn from_fn(n: usize, mut entry: impl FnMut(usize, usize) -> E) -> Self {
        let mut upper = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 1..=n {
            for j in i + 1..=n {
                upper.push(entry(i, j));
            }
        }
        SkewMatrix { n, upper }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    fn slot(&self, i: usize, j: usize) -> usize {
        debug_assert!(1 <= i && i < j && j <= self.n);
        // entries of rows 1..i-1 come first
        (i - 1) * (2 * self.n - i) / 2 + (j - i - 1)
    }

    /// The stored entry `M[i,j]` for `i < j`.
    pub fn upper(&self, i: usize, j: usize) -> &E {
        &self.upper[self.slot(i, j)]
    }

    /// `M[i,j]` for any `i, j`, using antisymmetry and the zero diagonal.
    pub fn get<R: CommRing<Elem = E>>(&self, ring: &R, i: usize, j: usize) -> E {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.upper(i, j).clone(),
            std::cmp::Ordering::Greater => ring.neg(self.upper(j, i)),
            std::cmp::Ordering::Equal => ring.zero(),
        }
    }

    pub fn map<T: Clone>(&self, f: impl Fn(&E) -> T) -> SkewMatrix<T> {
        SkewMatrix {
            n: self.n,
            upper: self.upper.iter().map(f).collect(),
        }
    }

    /// Principal submatrix on the given (increasing) rows.
    pub fn submatrix(&self, rows: &[usize]) -> SkewMatrix<E> {
        SkewMatrix::from_fn(rows.len(), |a, b| self.upper(rows[a - 1], rows[b - 1]).clone())
    }
}

/// Sign of the permutation `[i1 j1 i2 j2 ...]` by counting inversions.
fn sign_of_sequence(seq: &[usize]) -> bool {
    let mut inv = 0usize;
    for a in 0..seq.len() {
        for b in a + 1..seq.len() {
            if seq[a] > seq[b] {
                inv += 1;
            }
        }
    }
    inv.is_multiple_of(2)
}

fn for_each_matching(remaining: &mut Vec<usize>, seq: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
    if remaining.is_empty() {
        visit(seq);
        return;
    }
    let first = remaining.remove(0);
    for idx in 0..remaining.len() {
        let partner = remaining.remove(idx);
        seq.push(first);
        seq.push(partner);
        for_each_matching(remaining, seq, visit);
        seq.pop();
        seq.pop();
        remaining.insert(idx, partner);
    }
    remaining.insert(0, first);
}

/// Pfaffian as the signed sum over perfect matchings.
pub fn pfaffian<R: CommRing>(ring: &R, m: &SkewMatrix<R::Elem>) -> Result<R::Elem, PfaffianError> {
    if m.size() % 2 == 1 {
        return Err(PfaffianError::OddSize(m.size()));
    }
    let mut acc = ring.zero();
    let mut remaining: Vec<usize> = (1..=m.size()).collect();
    let mut seq = Vec::with_capacity(m.size());
    for_each_matching(&mut remaining, &mut seq, &mut |s: &[usize]| {
        let mut prod = ring.one();
        for pair in s.chunks(2) {
            prod = ring.mul(&prod, m.upper(pair[0], pair[1]));
            if ring.is_zero(&prod) {
                return;
            }
        }
        acc = if sign_of_sequence(s) {
            ring.add(&acc, &prod)
        } else {
            ring.sub(&acc, &prod)
        };
    });
    Ok(acc)
}

/// Pfaffian by expansion along the first row.
pub fn pfaffian_expansion<R: CommRing>(ring: &R, m: &SkewMatrix<R::Elem>) -> Result<R::Elem, PfaffianError> {
    if m.size() % 2 == 1 {
        return Err(PfaffianError::OddSize(m.size()));
    }
    let rows: Vec<usize> = (1..=m.size()).collect();
    Ok(expand(ring, m, &rows))
}

fn expand<R: CommRing>(ring: &R, m: &SkewMatrix<R::Elem>, rows: &[usize]) -> R::Elem {
    if rows.is_empty() {
        return ring.one();
    }
    let first = rows[0];
    let mut acc = ring.zero();
    for idx in 1..rows.len() {
        let entry = m.upper(first, rows[idx]);
        if ring.is_zero(entry) {
            continue;
        }
        let rest: Vec<usize> = rows[1..].iter().copied().filter(|&r| r != rows[idx]).collect();
        let term = ring.mul(entry, &expand(ring, m, &rest));
        acc = if idx % 2 == 1 { ring.add(&acc, &term) } else { ring.sub(&acc, &term) };
    }
    acc
}

/// Pfaffian of the principal submatrix on `rows` (1-based, any order).
pub fn sub_pfaffian<R: CommRing>(ring: &R, m: &SkewMatrix<R::Elem>, rows: &[usize]) -> Result<R::Elem, PfaffianError> {
    let mut sorted = rows.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != rows.len() || sorted.iter().any(|&r| r == 0 || r > m.size()) {
        return Err(PfaffianError::BadRows(rows.to_vec(), m.size()));
    }
    if sorted.len() % 2 == 1 {
        return Err(PfaffianError::OddSize(sorted.len()));
    }
    pfaffian(ring, &m.submatrix(&sorted))
}

/// Pfaffian of `m` with row and column `l` removed.
pub fn pf_l<R: CommRing>(ring: &R, m: &SkewMatrix<R::Elem>, l: usize) -> Result<R::Elem, PfaffianError> {
    if l == 0 || l > m.size() {
        return Err(PfaffianError::BadRows(vec![l], m.size()));
    }
    let rows: Vec<usize> = (1..=m.size()).filter(|&r| r != l).collect();
    sub_pfaffian(ring, m, &rows)
}

/// The matrix with entries `x_ij(t) = sum_h x[i,j,h] t^h` over `ring`, kept modulo `t^bound`.
pub fn generic_skew_jet_matrix<F: Field>(
    ring: &Arc<PolyRing<F>>,
    bound: usize,
) -> Result<(TruncRing<Arc<PolyRing<F>>>, SkewMatrix<TruncPoly<Polynomial<F>>>), PfaffianError> {
    let shape = ring
        .shape()
        .ok_or_else(|| PolyError::BadShape("ring has no jet shape".into()))?;
    let tr = TruncRing::new(ring.clone(), bound.max(1));
    let m = SkewMatrix::from_fn(shape.n, |i, j| tr.from_coeffs((0..shape.k).map(|h| ring.x(i, j, h))));
    Ok((tr, m))
}

/// All `size`-subsets of `1..=n`, in colex order.
pub fn colex_subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if size > n {
        return out;
    }
    let mut cur: Vec<usize> = (1..=size).collect();
    loop {
        out.push(cur.clone());
        // advance: find the first position that can grow without hitting its successor
        let mut pos = 0;
        loop {
            if pos == size {
                return out;
            }
            let limit = if pos + 1 < size { cur[pos + 1] } else { n + 1 };
            if cur[pos] + 1 < limit {
                cur[pos] += 1;
                for (q, slot) in cur.iter_mut().enumerate().take(pos) {
                    *slot = q + 1;
                }
                break;
            }
            pos += 1;
        }
        if size == 0 {
            return out;
        }
    }
}

/// One generator `p^(h)` of a jet ideal: the `t^h` coefficient of the
/// pfaffian on `rows`.
#[derive(Clone, Debug, PartialEq)]
pub struct JetGenerator<F: Field> {
    pub rows: Vec<usize>,
    pub h: usize,
    pub poly: Polynomial<F>,
}

#[derive(Clone, Debug)]
pub struct JetIdeal<F: Field> {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    ring: Arc<PolyRing<F>>,
    generators: Vec<JetGenerator<F>>,
}

impl<F: Field> JetIdeal<F> {
    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn generators(&self) -> &[JetGenerator<F>] {
        &self.generators
    }

    pub fn polys(&self) -> Vec<Polynomial<F>> {
        self.generators.iter().map(|g| g.poly.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Looks up `p^(h)` on a row set.
    pub fn generator(&self, rows: &[usize], h: usize) -> Option<&Polynomial<F>> {
        self.generators
            .iter()
            .find(|g| g.h == h && g.rows == rows)
            .map(|g| &g.poly)
    }
}

/// Generators of the jet ideal of `2r`-pfaffians in `k`-jets of `n x n`
/// skew matrices: row sets in colex order, then `h` ascending.
pub fn jet_generators<F: Field>(n: usize, k: usize, r: usize, field: F) -> Result<JetIdeal<F>, PfaffianError> {
    let ring = make_jet_ring(n, k, field)?;
    jet_generators_in(&ring, r)
}

/// Same as [`jet_generators`] over an existing jet ring.
pub fn jet_generators_in<F: Field>(ring: &Arc<PolyRing<F>>, r: usize) -> Result<JetIdeal<F>, PfaffianError> {
    let shape = ring
        .shape()
        .ok_or_else(|| PolyError::BadShape("ring has no jet shape".into()))?;
    let (n, k) = (shape.n, shape.k);
    if r == 0 || 2 * r > n {
        return Err(PfaffianError::RankTooLarge { two_r: 2 * r, n });
    }
    let (tr, m) = generic_skew_jet_matrix(ring, k)?;
    let mut generators = Vec::new();
    for rows in colex_subsets(n, 2 * r) {
        let pf = sub_pfaffian(&tr, &m, &rows)?;
        for h in 0..k {
            generators.push(JetGenerator {
                rows: rows.clone(),
                h,
                poly: tr.coeff_t(&pf, h)?,
            });
        }
    }
    Ok(JetIdeal {
        n,
        k,
        r,
        ring: ring.clone(),
        generators,
    })
}
