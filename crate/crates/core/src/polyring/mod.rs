//! Sparse multivariate polynomials over jet variables `x[i,j,h]`.

mod field;
mod monomial;
mod order;
mod parse;
mod poly;
mod ring;

pub use field::{CommRing, Field, FieldTag, Integers, PrimeField, Rationals, ReductionDomain, DEFAULT_PRIME};
pub use monomial::{Exponents, Monomial};
pub use order::MonomialOrder;
pub use parse::{parse_monomial, parse_polynomial};
pub use poly::{Polynomial, Term};
pub use ring::{jet_ranking, make_jet_ring, JetShape, PolyRing, VarId};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PolyError {
    #[error("bad ring shape: {0}")]
    BadShape(String),
    #[error("modulus {0} is not a prime below 2^31")]
    BadModulus(u32),
    #[error("coefficient fields differ ({0} vs {1})")]
    FieldMismatch(FieldTag, FieldTag),
    #[error("operands belong to different rings")]
    RingMismatch,
    #[error("variable {0} is not in the ring")]
    UnknownVariable(VarId),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Polynomials over the rationals.
pub type QPoly = Polynomial<Rationals>;
/// Polynomials over the default prime field.
pub type PPoly = Polynomial<PrimeField>;

impl<F: Field> CommRing for std::sync::Arc<PolyRing<F>> {
    type Elem = Polynomial<F>;

    fn zero(&self) -> Polynomial<F> {
        Polynomial::zero(self.clone())
    }
    fn one(&self) -> Polynomial<F> {
        Polynomial::one(self.clone())
    }
    fn is_zero(&self, a: &Polynomial<F>) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Polynomial<F>, b: &Polynomial<F>) -> Polynomial<F> {
        a + b
    }
    fn sub(&self, a: &Polynomial<F>, b: &Polynomial<F>) -> Polynomial<F> {
        a - b
    }
    fn neg(&self, a: &Polynomial<F>) -> Polynomial<F> {
        Polynomial::neg(a)
    }
    fn mul(&self, a: &Polynomial<F>, b: &Polynomial<F>) -> Polynomial<F> {
        a * b
    }
    fn from_i64(&self, v: i64) -> Polynomial<F> {
        Polynomial::constant(self.clone(), self.field().from_i64(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::cmp::Ordering;

    fn deg1_sorted_by_ranking(n: usize, k: usize) -> Vec<VarId> {
        // independent restatement of the ranking: higher level first, then row-major
        let mut vars: Vec<VarId> = (0..k)
            .flat_map(|h| (1..=n).flat_map(move |i| (i + 1..=n).map(move |j| VarId::jet(i, j, h))))
            .collect();
        vars.sort_by(|a, b| match (a, b) {
            (VarId::Jet { i: ai, j: aj, h: ah }, VarId::Jet { i: bi, j: bj, h: bh }) => {
                bh.cmp(ah).then(ai.cmp(bi)).then(aj.cmp(bj))
            }
            _ => unreachable!(),
        });
        vars
    }

    #[test]
    fn top_variable_beats_bottom_variable() {
        for (n, k) in [(4, 2), (5, 3), (6, 1)] {
            let r = make_jet_ring(n, k, Rationals).unwrap();
            let a = r.x(1, 2, k - 1);
            let b = r.x(n - 1, n, 0);
            let (a, b) = (a.leading_monomial().unwrap(), b.leading_monomial().unwrap());
            assert_eq!(r.compare(a, b).unwrap(), Ordering::Greater);
            assert_eq!(r.compare(a, a).unwrap(), Ordering::Equal);
        }
    }

    #[test]
    fn degree_one_sort_matches_brute_force() {
        let (n, k) = (4, 2);
        let r = make_jet_ring(n, k, Rationals).unwrap();
        let mut mons: Vec<(VarId, Monomial)> = r
            .vars()
            .iter()
            .rev()
            .map(|v| (*v, r.variable(*v).unwrap().leading_monomial().unwrap().clone()))
            .collect();
        mons.sort_by(|a, b| r.order().cmp(&b.1, &a.1));
        let got: Vec<VarId> = mons.into_iter().map(|(v, _)| v).collect();
        assert_eq!(got, deg1_sorted_by_ranking(n, k));
    }

    fn all_monomials_upto(nvars: usize, deg: u32) -> Vec<Monomial> {
        let mut out = vec![Monomial::one(nvars)];
        let mut frontier = out.clone();
        for _ in 0..deg {
            let mut next = Vec::new();
            for m in &frontier {
                // extend only at or after the last used variable to avoid repeats
                let last = m.support().map(|(i, _)| i).max().unwrap_or(0);
                for v in last..nvars {
                    next.push(m.mul(&Monomial::variable(nvars, v)));
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    #[test]
    fn order_is_total_and_transitive_up_to_degree_two() {
        let r = make_jet_ring(4, 2, Rationals).unwrap();
        let ord = r.order();
        let mons = all_monomials_upto(r.nvars(), 2);
        assert_eq!(mons.len(), 1 + 12 + 78);
        for a in &mons {
            for b in &mons {
                let ab = ord.cmp(a, b);
                assert_eq!(ab, ord.cmp(b, a).reverse());
                assert_eq!(ab == Ordering::Equal, a == b);
                if a.degree() != b.degree() {
                    assert_eq!(ab, a.degree().cmp(&b.degree()));
                }
            }
        }
        // sort and verify adjacent transitivity through a full chain
        let mut sorted = mons.clone();
        sorted.sort_by(|a, b| ord.cmp(a, b));
        for w in sorted.windows(3) {
            assert_eq!(ord.cmp(&w[0], &w[2]), Ordering::Less);
        }
        for (i, a) in sorted.iter().enumerate() {
            for b in &sorted[i + 1..] {
                assert_eq!(ord.cmp(a, b), Ordering::Less);
            }
        }
    }

    fn arb_monomial(nvars: usize) -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u16..3, nvars).prop_map(Monomial::from_exponents)
    }

    proptest! {
        #[test]
        fn order_respects_multiplication(a in arb_monomial(12), b in arb_monomial(12), c in arb_monomial(12)) {
            let ord = MonomialOrder::DegRevLex;
            prop_assert_eq!(ord.cmp(&a, &b), ord.cmp(&a.mul(&c), &b.mul(&c)));
            let elim = MonomialOrder::Elimination { block: 2 };
            prop_assert_eq!(elim.cmp(&a, &b), elim.cmp(&a.mul(&c), &b.mul(&c)));
        }

        #[test]
        fn distributivity_over_prime_field(
            fs in proptest::collection::vec((arb_monomial(6), -50i64..50), 0..6),
            gs in proptest::collection::vec((arb_monomial(6), -50i64..50), 0..6),
            hs in proptest::collection::vec((arb_monomial(6), -50i64..50), 0..6),
        ) {
            let r = make_jet_ring(4, 1, PrimeField::default()).unwrap();
            let field = *r.field();
            let mk = |ts: &Vec<(Monomial, i64)>| Polynomial::from_terms(
                r.clone(), ts.iter().map(|(m, c)| (m.clone(), field.from_i64(*c))));
            let (f, g, h) = (mk(&fs), mk(&gs), mk(&hs));
            let lhs = &(&f + &g) * &h;
            // term-by-term expansion
            let mut expanded = Vec::new();
            for a in f.terms().iter().chain(g.terms()) {
                for b in h.terms() {
                    expanded.push((a.mon.mul(&b.mon), CommRing::mul(&field, &a.coeff, &b.coeff)));
                }
            }
            prop_assert_eq!(lhs, Polynomial::from_terms(r.clone(), expanded));
        }

        #[test]
        fn rational_division_by_monomial(
            fs in proptest::collection::vec((arb_monomial(6), -9i64..9, 1i64..5), 0..6),
            m in arb_monomial(6),
        ) {
            let r = make_jet_ring(4, 1, Rationals).unwrap();
            let f = Polynomial::from_terms(r.clone(), fs.iter().map(|(mon, a, b)| {
                (mon.clone(), num_rational::BigRational::new((*a).into(), (*b).into()))
            }));
            let g = Polynomial::from_monomial(r.clone(), m.clone());
            prop_assert_eq!((&f * &g).div_monomial(&m).unwrap(), f.clone());
            let back = parse_polynomial(&r, &f.to_string()).unwrap();
            prop_assert_eq!(back, f);
        }
    }
}
