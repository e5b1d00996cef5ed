use std::cmp::Ordering;
use std::fmt;
use std::ops;
use std::sync::Arc;

use num_traits::{One, Signed};

use super::field::Field;
use super::monomial::Monomial;
use super::ring::PolyRing;
use super::PolyError;

#[derive(Clone, Debug, PartialEq)]
pub struct Term<C> {
    pub mon: Monomial,
    pub coeff: C,
}

/// Sparse polynomial whose terms are kept sorted by the ring's term order,
/// largest first, with no zero coefficients.
#[derive(Clone)]
pub struct Polynomial<F: Field> {
    ring: Arc<PolyRing<F>>,
    terms: Vec<Term<F::Elem>>,
}

impl<F: Field> Polynomial<F> {
    pub fn zero(ring: Arc<PolyRing<F>>) -> Self {
        Polynomial { ring, terms: Vec::new() }
    }

    pub fn constant(ring: Arc<PolyRing<F>>, c: F::Elem) -> Self {
        let n = ring.nvars();
        Self::from_terms(ring, [(Monomial::one(n), c)])
    }

    pub fn one(ring: Arc<PolyRing<F>>) -> Self {
        let c = ring.field().one();
        Self::constant(ring, c)
    }

    pub fn from_monomial(ring: Arc<PolyRing<F>>, m: Monomial) -> Self {
        let c = ring.field().one();
        Polynomial {
            ring,
            terms: vec![Term { mon: m, coeff: c }],
        }
    }

    /// Builds a canonical polynomial from arbitrary (possibly repeated) terms.
    pub fn from_terms(ring: Arc<PolyRing<F>>, terms: impl IntoIterator<Item = (Monomial, F::Elem)>) -> Self {
        let order = ring.order();
        let mut raw: Vec<Term<F::Elem>> = terms
            .into_iter()
            .map(|(mon, coeff)| Term { mon, coeff })
            .collect();
        raw.sort_by(|a, b| order.cmp(&b.mon, &a.mon));
        let field = ring.field();
        let mut terms: Vec<Term<F::Elem>> = Vec::with_capacity(raw.len());
        for t in raw {
            match terms.last_mut() {
                Some(last) if last.mon == t.mon => last.coeff = field.add(&last.coeff, &t.coeff),
                _ => {
                    if let Some(last) = terms.last() {
                        if field.is_zero(&last.coeff) {
                            terms.pop();
                        }
                    }
                    terms.push(t);
                }
            }
        }
        if terms.last().is_some_and(|t| field.is_zero(&t.coeff)) {
            terms.pop();
        }
        Polynomial { ring, terms }
    }

    /// Trusted constructor: terms already sorted, distinct and nonzero.
    pub(crate) fn from_sorted_terms(ring: Arc<PolyRing<F>>, terms: Vec<Term<F::Elem>>) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.order().cmp(&w[0].mon, &w[1].mon) == Ordering::Greater));
        Polynomial { ring, terms }
    }

    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn terms(&self) -> &[Term<F::Elem>] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term<F::Elem>> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<&Term<F::Elem>> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.mon)
    }

    pub fn leading_coeff(&self) -> Option<&F::Elem> {
        self.terms.first().map(|t| &t.coeff)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.mon.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some(t) => self.terms.iter().all(|s| s.mon.degree() == t.mon.degree()),
        }
    }

    pub fn coeff_of(&self, m: &Monomial) -> F::Elem {
        self.terms
            .iter()
            .find(|t| &t.mon == m)
            .map(|t| t.coeff.clone())
            .unwrap_or_else(|| self.ring.field().zero())
    }

    fn check_same(&self, other: &Self) -> Result<(), PolyError> {
        if self.ring.same_as(&other.ring) {
            Ok(())
        } else if self.ring.field().tag() != other.ring.field().tag() {
            Err(PolyError::FieldMismatch(self.ring.field().tag(), other.ring.field().tag()))
        } else {
            Err(PolyError::RingMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_same(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_same(other)?;
        Ok(self.merge(other, true))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_same(other)?;
        let field = self.ring.field();
        let mut prods = Vec::with_capacity(self.len() * other.len());
        for a in &self.terms {
            for b in &other.terms {
                prods.push((a.mon.mul(&b.mon), field.mul(&a.coeff, &b.coeff)));
            }
        }
        Ok(Self::from_terms(self.ring.clone(), prods))
    }

    fn merge(&self, other: &Self, subtract: bool) -> Self {
        let field = self.ring.field();
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let a = &self.terms[i];
            let b = &other.terms[j];
            match order.cmp(&a.mon, &b.mon) {
                Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if subtract { field.neg(&b.coeff) } else { b.coeff.clone() };
                    out.push(Term { mon: b.mon.clone(), coeff: c });
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if subtract {
                        field.sub(&a.coeff, &b.coeff)
                    } else {
                        field.add(&a.coeff, &b.coeff)
                    };
                    if !field.is_zero(&c) {
                        out.push(Term { mon: a.mon.clone(), coeff: c });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        for b in &other.terms[j..] {
            let c = if subtract { field.neg(&b.coeff) } else { b.coeff.clone() };
            out.push(Term { mon: b.mon.clone(), coeff: c });
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn neg(&self) -> Self {
        let field = self.ring.field();
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    mon: t.mon.clone(),
                    coeff: field.neg(&t.coeff),
                })
                .collect(),
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let field = self.ring.field();
        if field.is_zero(c) {
            return Self::zero(self.ring.clone());
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    mon: t.mon.clone(),
                    coeff: field.mul(&t.coeff, c),
                })
                .collect(),
        }
    }

    /// Multiplication by a monomial preserves the term order, so no re-sort.
    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    mon: t.mon.mul(m),
                    coeff: t.coeff.clone(),
                })
                .collect(),
        }
    }

    /// Exact division by a monomial that divides every term.
    pub fn div_monomial(&self, m: &Monomial) -> Option<Self> {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                m.quotient_of(&t.mon).map(|q| Term {
                    mon: q,
                    coeff: t.coeff.clone(),
                })
            })
            .collect::<Option<Vec<_>>>()?;
        Some(Polynomial {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.ring.clone());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) => {
                let inv = self.ring.field().inv(lc).expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    /// Re-expresses this polynomial in `target`, mapping each monomial with `f`.
    pub fn map_into(
        &self,
        target: &Arc<PolyRing<F>>,
        mut f: impl FnMut(&Monomial) -> Option<Monomial>,
    ) -> Option<Polynomial<F>> {
        let terms = self
            .terms
            .iter()
            .map(|t| f(&t.mon).map(|m| (m, t.coeff.clone())))
            .collect::<Option<Vec<_>>>()?;
        Some(Polynomial::from_terms(target.clone(), terms))
    }
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_as(&other.ring) && self.terms == other.terms
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

/// Text form: `c*x[i,j,h]^e*... + ... - ...`, terms in descending order,
/// coefficients as `a/b` with `b` omitted when one and unit coefficients
/// omitted in front of non-constant monomials.
impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = self.ring.field();
        for (pos, t) in self.terms.iter().enumerate() {
            let (num, den) = field.to_ratio(&t.coeff);
            let negative = num.is_negative();
            let num = num.abs();
            if pos == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            let unit = num.is_one() && den.is_one();
            if t.mon.is_one() {
                write!(f, "{num}")?;
                if !den.is_one() {
                    write!(f, "/{den}")?;
                }
            } else {
                if !unit {
                    write!(f, "{num}")?;
                    if !den.is_one() {
                        write!(f, "/{den}")?;
                    }
                    write!(f, "*")?;
                }
                write!(f, "{}", self.ring.format_monomial(&t.mon))?;
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl<'a, F: Field> ops::$tr<&'a Polynomial<F>> for &'a Polynomial<F> {
            type Output = Polynomial<F>;

            /// Panics when the operands live in different rings.
            fn $method(self, rhs: &'a Polynomial<F>) -> Polynomial<F> {
                self.$inner(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }

        impl<F: Field> ops::$tr<Polynomial<F>> for Polynomial<F> {
            type Output = Polynomial<F>;

            fn $method(self, rhs: Polynomial<F>) -> Polynomial<F> {
                self.$inner(&rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl<F: Field> ops::Neg for &Polynomial<F> {
    type Output = Polynomial<F>;

    fn neg(self) -> Polynomial<F> {
        Polynomial::neg(self)
    }
}
