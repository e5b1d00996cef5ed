use super::*;
use crate::pfaffian::jet_generators;
use crate::polyring::{Rationals, VarId};
use num_rational::BigRational;
use proptest::prelude::{any, prop_assert, prop_assert_eq, proptest};
use rand::SeedableRng;

fn t_power_coeffs(e: usize) -> Vec<u32> {
    let mut v = vec![0; e];
    v.push(1);
    v
}

/// Evaluates every jet generator at the point's coordinates.
fn generators_vanish(p: &JetPoint<PrimeField>, r: usize) -> bool {
    let f = *p.field();
    let ideal = jet_generators(p.size(), p.k(), r, f).unwrap();
    let ring = ideal.ring().clone();
    ideal.generators().iter().all(|g| {
        let value = g.poly.terms().iter().fold(0u32, |acc, term| {
            let prod = term.mon.support().fold(term.coeff, |acc, (v, e)| match ring.var_at(v) {
                VarId::Jet { i, j, h } => {
                    let c = p.coordinate(i as usize, j as usize, h as usize);
                    CommRing::mul(&f, &acc, &f.pow(c, e as u64))
                }
                VarId::Aux(_) => unreachable!(),
            });
            f.add(&acc, &prod)
        });
        value == 0
    })
}

#[test]
fn witness_shapes() {
    let f = PrimeField::default();
    let expect = [(2, [1, 1, 1]), (3, [1, 2, 2]), (4, [2, 2, 3]), (5, [2, 3, 4])];
    for (k, exps) in expect {
        let w = crux2_witness(k, f).unwrap();
        for ((i, j), e) in [(1, 2), (3, 4), (5, 6)].into_iter().zip(exps) {
            assert_eq!(w.entries().upper(i, j).coeffs(), t_power_coeffs(e).as_slice(), "k={k}");
        }
        assert!(f.is_zero(&w.coordinate(1, 3, 0)));
    }
    assert!(crux2_witness(1, f).is_err());
}

#[test]
fn witnesses_separate_y_from_z0() {
    for k in 2..=8 {
        let w = crux2_witness(k, Rationals).unwrap();
        assert!(on_variety(&w, 2).unwrap(), "k={k}");
        let pf = w.extended_pfaffian().unwrap();
        let one = BigRational::from_integer(1.into());
        let mut expect = vec![BigRational::from_integer(0.into()); 2 * k - 1];
        expect.push(one);
        assert_eq!(pf.coeffs(), expect.as_slice(), "k={k}");
        assert!(!z0_obstruction(&w).unwrap(), "k={k}");
        let ell = k / 2;
        for s in 0..ell {
            assert!(w.in_y(s));
        }
        assert!(!w.in_y(ell));
        let wp = crux2_witness(k, PrimeField::default()).unwrap();
        assert!(generators_vanish(&wp, 2));
    }
}

#[test]
fn zero_point() {
    let z = JetPoint::zero(6, 3, PrimeField::default());
    for r in 1..=3 {
        assert!(on_variety(&z, r).unwrap());
    }
    assert!(z0_obstruction(&z).unwrap());
    assert!(on_variety(&z, 4).is_err());
    let too_long = JetPoint::new(4, 2, PrimeField::default(), |_, _| vec![0, 0, 1]);
    assert!(matches!(too_long, Err(WitnessError::EntryTooLong { .. })));
}

#[test]
fn rank_two_points_satisfy_the_necessary_condition() {
    let f = PrimeField::default();
    let mut rng = rand::rngs::StdRng::seed_from_u64(11);
    for k in 1..=5 {
        let p = sample_rank_two_point(6, k, f, &mut rng).unwrap();
        assert_ne!(p.coordinate(5, 6, 0), 0);
        assert!(on_variety(&p, 2).unwrap());
        assert!(generators_vanish(&p, 2));
        assert!(z0_obstruction(&p).unwrap(), "k={k}");
    }
}

#[test]
fn random_points_are_off_the_variety() {
    let f = PrimeField::default();
    let mut rng = rand::rngs::StdRng::seed_from_u64(3);
    for k in 1..=3 {
        let p = JetPoint::new(6, k, f, |_, _| (0..k).map(|_| rng.gen_range(0..f.modulus())).collect()).unwrap();
        assert!(!on_variety(&p, 2).unwrap());
        assert!(!generators_vanish(&p, 2));
        // certificate: a nonzero coefficient of some 4-pfaffian below t^k
        let ring = TruncRing::new(f, k);
        let witness = colex_subsets(6, 4).into_iter().find_map(|rows| {
            let pf = sub_pfaffian(&ring, p.entries(), &rows).unwrap();
            (0..k).find(|&h| ring.coeff_t(&pf, h).unwrap() != 0).map(|h| (rows, h))
        });
        assert!(witness.is_some());
        assert_eq!(z0_obstruction(&p), Err(WitnessError::NotOnVariety));
    }
}

proptest! {
    #[test]
    fn membership_is_permutation_invariant(seed in any::<u64>(), k in 1usize..4, rank_two in any::<bool>()) {
        let f = PrimeField::default();
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let p = if rank_two {
            sample_rank_two_point(6, k, f, &mut rng).unwrap()
        } else {
            crux2_witness(k.max(2), f).unwrap()
        };
        let mut perm: Vec<usize> = (1..=6).collect();
        for i in (1..6).rev() {
            perm.swap(i, rng.gen_range(0..=i));
        }
        let q = p.permuted(&perm);
        for r in 1..=3 {
            prop_assert_eq!(on_variety(&p, r).unwrap(), on_variety(&q, r).unwrap());
        }
        // the full pfaffian changes at most by sign
        let (a, b) = (p.extended_pfaffian().unwrap(), q.extended_pfaffian().unwrap());
        let ring = TruncRing::new(f, 2 * p.k());
        prop_assert!(a == b || a == ring.neg(&b));
    }
}

#[test]
fn report_serializes() {
    let w = crux2_witness(3, Rationals).unwrap();
    let rep = WitnessReport::for_point(&w).unwrap();
    assert_eq!(rep.pfaffian, "t^5");
    assert_eq!(rep.matrix[0][1], "t");
    assert_eq!(rep.matrix[1][0], "-1*t");
    assert!(rep.outside_z0);
    assert_eq!(rep.in_y, vec![0]);
    let json = serde_json::to_string(&rep).unwrap();
    assert!(json.contains("\"on_variety\":true"));
}
