use super::*;
use crate::pfaffian::jet_generators;
use crate::polyring::Rationals;

fn ints(cs: &[i64]) -> Vec<BigInt> {
    cs.iter().map(|&c| BigInt::from(c)).collect()
}

#[test]
fn binomial_table() {
    let t = BinomialTable::new(10);
    assert_eq!(t.get(6, 3), BigInt::from(20));
    assert_eq!(t.get(6, -1), BigInt::zero());
    assert_eq!(t.get(6, 7), BigInt::zero());
    assert_eq!(t.get(30, 15), BigInt::from(155_117_520u64));
    for n in 0..=10 {
        for k in 0..=n {
            assert_eq!(t.get(n, k), t.get(n, n - k));
        }
    }
}

#[test]
fn classical_invariants() {
    assert_eq!(classical_dimension(5, 2).unwrap(), 7);
    assert_eq!(classical_dimension(6, 2).unwrap(), 9);
    assert_eq!(classical_dimension(7, 1).unwrap(), 0);
    assert_eq!(classical_multiplicity(6, 2).unwrap(), BigInt::from(14));
    assert_eq!(classical_multiplicity(5, 2).unwrap(), BigInt::from(5));
    assert_eq!(classical_multiplicity(9, 1).unwrap(), BigInt::one());
    let h = classical_hilbert_series(5, 2).unwrap();
    assert_eq!(h.numerator.coeffs(), ints(&[1, 3, 1]).as_slice());
    assert_eq!(h.denominator, 7);
    let h = classical_hilbert_series(6, 2).unwrap();
    assert_eq!(h.numerator.coeffs(), ints(&[1, 6, 6, 1]).as_slice());
    assert_eq!(h.denominator, 9);
    assert!(classical_dimension(5, 3).is_err());
}

#[test]
fn classical_series_is_self_consistent() {
    for n in 4..=10 {
        for r in 2..=n / 2 {
            let h = classical_hilbert_series(n, r).unwrap();
            assert!(h.is_reduced(), "({n},{r})");
            assert_eq!(h.multiplicity().unwrap(), classical_multiplicity(n, r).unwrap(), "({n},{r})");
            assert_eq!(h.dimension().unwrap(), classical_dimension(n, r).unwrap(), "({n},{r})");
            assert!(h.numerator.is_palindromic(), "({n},{r})");
        }
    }
    // the full pfaffian of an even matrix is a hypersurface of degree r
    for r in 2..=5 {
        let h = classical_hilbert_series(2 * r, r).unwrap();
        assert_eq!(h.numerator, IntPoly::geometric(r));
    }
}

#[test]
fn complete_intersection_series() {
    let h = ci_hilbert_series(4, 3).unwrap();
    assert_eq!(h.numerator.coeffs(), ints(&[1, 3, 3, 1]).as_slice());
    assert_eq!((h.denominator, h.nvars), (15, 18));
    let h = ci_hilbert_series(6, 2).unwrap();
    assert_eq!(h.numerator, IntPoly::geometric(3).pow(2));
    assert_eq!(h.multiplicity().unwrap(), BigInt::from(9));
    let h = ci_hilbert_series(2, 5).unwrap();
    assert_eq!((h.numerator.clone(), h.denominator), (IntPoly::one(), 0));
    assert!(ci_hilbert_series(5, 2).is_err());
    for r in 1..=5 {
        let one = ci_hilbert_series(2 * r, 1).unwrap();
        assert_eq!(one, classical_hilbert_series(2 * r, r).unwrap());
        for k in 1..=6 {
            let h = ci_hilbert_series(2 * r, k).unwrap();
            assert_eq!(h.numerator, one.numerator.pow(k as u32));
            assert_eq!(h.dimension().unwrap(), k * one.dimension().unwrap());
            assert_eq!(h.multiplicity().unwrap(), BigInt::from(r).pow(k as u32));
        }
    }
}

#[test]
fn ci_leading_terms_are_coprime_of_degree_r() {
    for r in 1..=5 {
        for k in 1..=10 {
            let terms = ci_leading_terms(2 * r, k).unwrap();
            assert_eq!(terms.len(), k);
            let mut seen = std::collections::HashSet::new();
            for t in &terms {
                assert_eq!(t.len(), r);
                for v in t {
                    assert!(seen.insert(*v), "({r},{k}) repeats {v}");
                    if let VarId::Jet { i, j, h } = v {
                        assert!(i < j && (*j as usize) <= 2 * r && (*h as usize) < k);
                    }
                }
            }
        }
    }
}

#[test]
fn ci_leading_terms_match_generators() {
    let t = ci_leading_terms(4, 2).unwrap();
    assert_eq!(t[0], vec![VarId::jet(1, 4, 0), VarId::jet(2, 3, 0)]);
    assert_eq!(t[1], vec![VarId::jet(1, 2, 0), VarId::jet(3, 4, 1)]);
    for (n, kmax) in [(4, 4), (6, 3), (8, 2)] {
        let ideal = jet_generators(n, kmax, n / 2, Rationals).unwrap();
        let ring = ideal.ring();
        let predicted = ci_leading_terms(n, kmax).unwrap();
        for (h, vars) in predicted.iter().enumerate() {
            let factors: Vec<(VarId, u16)> = vars.iter().map(|v| (*v, 1)).collect();
            let m = ring.monomial_of(&factors).unwrap();
            assert_eq!(ideal.generators()[h].poly.leading_monomial(), Some(&m), "({n},{h})");
        }
    }
}

#[test]
fn r2_components() {
    let rep = component_codims_r2(6, 2).unwrap();
    let got: Vec<(&str, u64)> = rep.components.iter().map(|c| (c.label.as_str(), c.codim)).collect();
    assert_eq!(got, vec![("Z_0", 12), ("Y_0", 15)]);
    assert_eq!(rep.smallest, "Z_0");
    assert!(!rep.pure);
    let rep = component_codims_r2(6, 3).unwrap();
    let got: Vec<u64> = rep.components.iter().map(|c| c.codim).collect();
    assert_eq!(got, vec![18, 21]);
    let rep = component_codims_r2(8, 4).unwrap();
    let got: Vec<u64> = rep.components.iter().map(|c| c.codim).collect();
    assert_eq!(got, vec![60, 58, 56]);
    assert_eq!(rep.smallest, "Y_1");
    assert!(component_codims_r2(5, 3).is_err());
    assert!(component_codims_r2(7, 1).is_err());
}

#[test]
fn r2_monotonicity_flips_with_the_quadratic() {
    for n in 6..=20usize {
        let positive = (n * n + 12) > 9 * n;
        for k in 2..=10 {
            let rep = component_codims_r2(n, k).unwrap();
            let c: Vec<u64> = rep.components.iter().map(|c| c.codim).collect();
            assert_eq!(c.len(), k / 2 + 1);
            for w in c.windows(2) {
                if positive {
                    assert!(w[0] > w[1], "n={n} k={k} {c:?}");
                } else {
                    assert!(w[0] < w[1], "n={n} k={k} {c:?}");
                }
            }
            let expect = if positive { format!("Y_{}", k / 2 - 1) } else { "Z_0".to_string() };
            assert_eq!(rep.smallest, expect);
            assert!(!rep.pure);
        }
    }
}

#[test]
fn predicted_codimensions() {
    assert_eq!(predicted_codim(5, 3, 2).unwrap(), Some(9));
    assert_eq!(predicted_codim(6, 2, 2).unwrap(), Some(12));
    assert_eq!(predicted_codim(4, 7, 2).unwrap(), Some(7));
    assert_eq!(predicted_codim(6, 1, 2).unwrap(), Some(6));
    assert_eq!(predicted_codim(8, 2, 3).unwrap(), None);
    assert!(predicted_codim(5, 1, 3).is_err());
    for r in 1..=6 {
        for k in 1..=10 {
            assert_eq!(predicted_codim(2 * r, k, r).unwrap(), Some(k as u64));
            assert_eq!(predicted_codim(2 * r + 1, k, r).unwrap(), Some(3 * k as u64));
        }
    }
    // k = 1 agrees with the classical dimension on the boundary cases
    for r in 2..=5 {
        for n in [2 * r, 2 * r + 1] {
            let classical = level_vars(n) - classical_dimension(n, r).unwrap();
            assert_eq!(predicted_codim(n, 1, r).unwrap(), Some(classical as u64));
        }
    }
}

#[test]
fn component_bounds() {
    for k in 1..=6 {
        assert_eq!(component_count_lower_bound(5, k, 2).unwrap().lower, 1);
    }
    assert_eq!(component_count_lower_bound(8, 6, 2).unwrap(), ComponentBound { lower: 4, exact: true });
    assert_eq!(component_count_lower_bound(10, 5, 3).unwrap(), ComponentBound { lower: 3, exact: false });
    assert_eq!(component_count_lower_bound(6, 3, 2).unwrap().lower, 2);
    for k in 1..=20 {
        assert_eq!(component_count_lower_bound(8, k, 2).unwrap().lower, (k / 2 + 1) as u64);
    }
}
