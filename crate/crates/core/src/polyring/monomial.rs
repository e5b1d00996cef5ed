use std::cmp::Ordering;

use smallvec::SmallVec;

/// Exponent storage, indexed by variable rank (index 0 is the largest variable).
pub type Exponents = SmallVec<[u16; 32]>;

/// A power product over the variables of a ring.
///
/// Exponents are stored densely by variable rank so that order comparisons are
/// plain integer scans; the sparse view is [`Monomial::support`].
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: Exponents,
    degree: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
            degree: 0,
        }
    }

    pub fn from_exponents(exps: impl IntoIterator<Item = u16>) -> Self {
        let exps: Exponents = exps.into_iter().collect();
        let degree = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, degree }
    }

    pub fn variable(nvars: usize, idx: usize) -> Self {
        let mut m = Monomial::one(nvars);
        m.exps[idx] = 1;
        m.degree = 1;
        m
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn exponent(&self, idx: usize) -> u16 {
        self.exps[idx]
    }

    #[inline]
    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    /// Nonzero exponents as `(variable index, exponent)`.
    pub fn support(&self) -> impl Iterator<Item = (usize, u16)> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, &e)| (i, e))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
            degree: self.degree + other.degree,
        }
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial {
            exps: other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect(),
            degree: other.degree - self.degree,
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::from_exponents(self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)))
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial::from_exponents(self.exps.iter().zip(&other.exps).map(|(a, b)| *a.min(b)))
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Bit `i mod 64` set when variable `i` occurs; a quick divisibility filter.
    pub fn divmask(&self) -> u64 {
        self.support().fold(0u64, |m, (i, _)| m | (1u64 << (i % 64)))
    }

    /// Same monomial viewed in a ring with `extra` new variables prepended.
    pub fn shifted(&self, extra: usize) -> Monomial {
        let mut exps: Exponents = SmallVec::from_elem(0, extra);
        exps.extend_from_slice(&self.exps);
        Monomial {
            exps,
            degree: self.degree,
        }
    }

    /// Drops the first `count` variables, which must have exponent zero.
    pub fn unshifted(&self, count: usize) -> Option<Monomial> {
        if self.exps[..count].iter().any(|&e| e != 0) {
            return None;
        }
        Some(Monomial {
            exps: self.exps[count..].iter().copied().collect(),
            degree: self.degree,
        })
    }

    pub(crate) fn set_exponent(&mut self, idx: usize, e: u16) {
        self.degree = self.degree - self.exps[idx] as u32 + e as u32;
        self.exps[idx] = e;
    }
}

/// Degree-reverse-lexicographic comparison on a contiguous block of ranks.
#[inline]
pub(crate) fn degrevlex_block(a: &[u16], b: &[u16]) -> Ordering {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    da.cmp(&db).then_with(|| revlex(a, b))
}

#[inline]
pub(crate) fn revlex(a: &[u16], b: &[u16]) -> Ordering {
    for (x, y) in a.iter().rev().zip(b.iter().rev()) {
        if x != y {
            // smaller exponent in the smallest variable wins
            return y.cmp(x);
        }
    }
    Ordering::Equal
}
