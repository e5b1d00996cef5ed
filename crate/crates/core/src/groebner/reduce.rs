//! Normal forms and the S-pair criterion in plain field arithmetic.

use crate::polyring::{Field, Monomial, PolyError, Polynomial};

/// Normal form of `f` modulo `basis` (full reduction, exact field
/// arithmetic). No term of the result is divisible by a leading monomial of
/// `basis`, and `f - result` lies in the ideal `basis` generates.
pub fn reduce<F: Field>(f: &Polynomial<F>, basis: &[Polynomial<F>]) -> Result<Polynomial<F>, PolyError> {
    let ring = f.ring().clone();
    for g in basis {
        if !g.ring().same_as(&ring) {
            return Err(PolyError::RingMismatch);
        }
    }
    let field = ring.field().clone();
    let divisors: Vec<(&Monomial, &F::Elem, &Polynomial<F>)> = basis
        .iter()
        .filter_map(|g| g.leading_term().map(|t| (&t.mon, &t.coeff, g)))
        .collect();
    let mut rest = f.clone();
    let mut done: Vec<(Monomial, F::Elem)> = Vec::new();
    while let Some(lt) = rest.leading_term().cloned() {
        match divisors.iter().find(|(m, _, _)| m.divides(&lt.mon)) {
            Some((m, c, g)) => {
                let q = m.quotient_of(&lt.mon).expect("divides");
                let factor = field.div(&lt.coeff, c).expect("nonzero leading coefficient");
                rest = &rest - &g.mul_monomial(&q).scale(&factor);
            }
            None => {
                done.push((lt.mon.clone(), lt.coeff.clone()));
                let single = Polynomial::from_terms(ring.clone(), [(lt.mon, lt.coeff)]);
                rest = &rest - &single;
            }
        }
    }
    Ok(Polynomial::from_terms(ring, done))
}

/// S-polynomial of two nonzero polynomials, both leading coefficients scaled to one.
pub(crate) fn s_polynomial<F: Field>(f: &Polynomial<F>, g: &Polynomial<F>) -> Polynomial<F> {
    let (lf, lg) = (f.leading_monomial().unwrap(), g.leading_monomial().unwrap());
    let l = lf.lcm(lg);
    let a = f.monic().mul_monomial(&lf.quotient_of(&l).unwrap());
    let b = g.monic().mul_monomial(&lg.quotient_of(&l).unwrap());
    &a - &b
}

/// Outcome of [`is_groebner`].
#[derive(Clone, Debug, PartialEq)]
pub enum GroebnerCheck<F: Field> {
    Yes,
    /// A pair whose S-polynomial leaves a nonzero remainder.
    No {
        i: usize,
        j: usize,
        remainder: Polynomial<F>,
    },
}

impl<F: Field> GroebnerCheck<F> {
    pub fn is_yes(&self) -> bool {
        matches!(self, GroebnerCheck::Yes)
    }
}

/// Buchberger's criterion: every S-polynomial reduces to zero. Pairs with
/// coprime leading monomials are skipped.
pub fn is_groebner<F: Field>(gens: &[Polynomial<F>]) -> Result<GroebnerCheck<F>, PolyError> {
    let gens: Vec<(usize, &Polynomial<F>)> = gens.iter().enumerate().filter(|(_, g)| !g.is_zero()).collect();
    let plain: Vec<Polynomial<F>> = gens.iter().map(|(_, g)| (*g).clone()).collect();
    for (a, (i, f)) in gens.iter().enumerate() {
        for (j, g) in gens[a + 1..].iter() {
            if f.leading_monomial().unwrap().is_coprime(g.leading_monomial().unwrap()) {
                continue;
            }
            let r = reduce(&s_polynomial(f, g), &plain)?;
            if !r.is_zero() {
                return Ok(GroebnerCheck::No {
                    i: *i,
                    j: *j,
                    remainder: r,
                });
            }
        }
    }
    Ok(GroebnerCheck::Yes)
}
