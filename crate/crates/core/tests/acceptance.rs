//! Acceptance suite: one PASS/FAIL line per criterion, each under its runtime budget.
//!
//! Runs without the libtest harness so the lines always reach stdout:
//! `cargo test --release --test acceptance`.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};

use pfjet::formulas::{
    ci_hilbert_series, ci_leading_terms, classical_hilbert_series, classical_multiplicity, component_codims_r2,
    component_count_lower_bound, predicted_codim,
};
use pfjet::groebner::{buchberger, is_groebner, saturate, GbOptions, GroebnerBasis, MonomialIdeal};
use pfjet::hilbert::{hilbert_numerator, HilbertSeries, IntPoly};
use pfjet::pfaffian::{jet_generators, pfaffian, pfaffian_expansion, SkewMatrix};
use pfjet::polyring::{make_jet_ring, CommRing, Field, PrimeField, Rationals, VarId};
use pfjet::witness::{crux2_witness, on_variety, z0_obstruction};

type Check = Result<String, String>;

const MIN: Duration = Duration::from_secs(60);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn opts(budget: Duration) -> GbOptions {
    GbOptions {
        timeout: Some(budget),
        ..GbOptions::default()
    }
}

fn series<F: Field>(gb: &GroebnerBasis<F>) -> HilbertSeries {
    hilbert_numerator(&gb.initial_ideal()).reduced()
}

fn jet_gb<F: Field>(n: usize, k: usize, r: usize, field: F, budget: Duration) -> Result<(GroebnerBasis<F>, Duration), String> {
    let start = Instant::now();
    let ideal = jet_generators(n, k, r, field).map_err(err)?;
    let gb = buchberger(ideal.ring(), &ideal.polys(), &opts(budget)).map_err(err)?;
    Ok((gb, start.elapsed()))
}

fn numerator(coeffs: &[i64]) -> IntPoly {
    IntPoly::from_i64s(coeffs)
}

/// Same jet case over Q and over a prime field, each under its own budget.
fn both_fields(n: usize, k: usize, r: usize) -> Result<(HilbertSeries, String), String> {
    let (gp, tp) = jet_gb(n, k, r, PrimeField::default(), 5 * MIN).map_err(|e| format!("prime field: {e}"))?;
    let (gq, tq) = jet_gb(n, k, r, Rationals, 60 * MIN).map_err(|e| format!("rationals: {e}"))?;
    ensure!(
        gp.initial_ideal().sorted_exponents() == gq.initial_ideal().sorted_exponents(),
        "initial ideals over Q and Z/p differ"
    );
    ensure!(tp <= 5 * MIN && tq <= 60 * MIN, "over budget: Z/p {tp:?}, Q {tq:?}");
    Ok((series(&gq), format!("Z/p {:.3}s, Q {:.3}s, same initial ideal", tp.as_secs_f64(), tq.as_secs_f64())))
}

fn criterion_1() -> Check {
    let (gb, _) = jet_gb(5, 1, 2, Rationals, 5 * MIN)?;
    let h = series(&gb);
    ensure!(h.numerator == numerator(&[1, 3, 1]) && h.denominator == 7, "got ({})/(1-z)^{}", h.numerator, h.denominator);
    let closed = classical_hilbert_series(5, 2).map_err(err)?.reduced();
    ensure!(h == closed, "closed form gives ({})/(1-z)^{}", closed.numerator, closed.denominator);
    Ok(format!("({})/(1-z)^7", h.numerator))
}

fn criterion_2() -> Check {
    let (gb, _) = jet_gb(6, 1, 2, Rationals, 5 * MIN)?;
    let h = series(&gb);
    ensure!(h.numerator == numerator(&[1, 6, 6, 1]) && h.denominator == 9, "got ({})/(1-z)^{}", h.numerator, h.denominator);
    let e = h.multiplicity().map_err(err)?;
    ensure!(e == BigInt::from(14), "multiplicity {e}");
    let closed = classical_multiplicity(6, 2).map_err(err)?;
    ensure!(closed == BigInt::from(14), "closed multiplicity {closed}");
    Ok(format!("({})/(1-z)^9, e = 14", h.numerator))
}

fn criterion_3() -> Check {
    let (h, note) = both_fields(5, 3, 2)?;
    ensure!(h.codimension().map_err(err)? == 9, "codim {}", h.codimension().map_err(err)?);
    ensure!(h.numerator == numerator(&[1, 9, 30, 45, 30, 9, 1]), "numerator {}", h.numerator);
    ensure!(h.numerator == numerator(&[1, 3, 1]).pow(3), "numerator is not the cube");
    Ok(format!("codim 9, numerator = (1 + 3z + z^2)^3; {note}"))
}

fn criterion_4() -> Check {
    let (h, note) = both_fields(6, 2, 2)?;
    ensure!(h.codimension().map_err(err)? == 12, "codim {}", h.codimension().map_err(err)?);
    ensure!(h.numerator == numerator(&[1, 12, 48, 75, 45, 15]), "numerator {}", h.numerator);
    let e = h.multiplicity().map_err(err)?;
    ensure!(e == BigInt::from(196) && e == BigInt::from(14).pow(2), "multiplicity {e}");
    ensure!(h.dimension().map_err(err)? == 18, "dimension {}", h.dimension().map_err(err)?);
    Ok(format!("codim 12, e = 196, dim 18; {note}"))
}

/// Saturation of the (6,2,2) jet ideal by `x[5,6,0]`.
fn saturation<F: Field>(field: F, budget: Duration) -> Result<(HilbertSeries, Duration), String> {
    let start = Instant::now();
    let ideal = jet_generators(6, 2, 2, field).map_err(err)?;
    let f = ideal.ring().x(5, 6, 0);
    let gb = saturate(ideal.ring(), &ideal.polys(), &f, &opts(budget)).map_err(err)?;
    Ok((series(&gb), start.elapsed()))
}

fn criterion_5() -> Check {
    // twice the budgets of the unsaturated case
    let (hp, tp) = saturation(PrimeField::default(), 10 * MIN)?;
    let (hq, tq) = saturation(Rationals, 120 * MIN)?;
    let (out, times) = ([hp, hq], [tp, tq]);
    ensure!(out[0] == out[1], "saturations over Q and Z/p differ");
    let h = &out[1];
    let want = numerator(&[1, 12, 48, 74, 48, 12, 1]);
    ensure!(h.numerator == want, "numerator {}", h.numerator);
    ensure!(h.numerator == numerator(&[1, 6, 6, 1]).pow(2), "numerator is not the square");
    ensure!(h.numerator.is_palindromic() && h.numerator.all_positive(), "h-vector not symmetric and positive");
    ensure!(times[0] <= 10 * MIN && times[1] <= 120 * MIN, "over budget {times:?}");
    Ok(format!(
        "numerator = (1 + 6z + 6z^2 + z^3)^2, symmetric, positive; Z/p {:.3}s, Q {:.3}s",
        times[0].as_secs_f64(),
        times[1].as_secs_f64()
    ))
}

fn criterion_6() -> Check {
    let mut cases = Vec::new();
    for (n, r, ks) in [(4usize, 2usize, 1..=4usize), (6, 3, 1..=2)] {
        for k in ks {
            let ideal = jet_generators(n, k, r, Rationals).map_err(err)?;
            let ring = ideal.ring();
            let polys = ideal.polys();
            ensure!(is_groebner(&polys).map_err(err)?.is_yes(), "({n},{r},{k}): generators are not a Gröbner basis");
            let mut got: Vec<Vec<u16>> = polys.iter().map(|p| p.leading_monomial().unwrap().exponents().to_vec()).collect();
            let mut want = Vec::new();
            for vars in ci_leading_terms(n, k).map_err(err)? {
                let factors: Vec<(VarId, u16)> = vars.into_iter().map(|v| (v, 1)).collect();
                want.push(ring.monomial_of(&factors).map_err(err)?.exponents().to_vec());
            }
            got.sort();
            want.sort();
            ensure!(got == want, "({n},{r},{k}): leading terms differ from the closed list");
            let lead = MonomialIdeal::new(ring.nvars(), polys.iter().filter_map(|p| p.leading_monomial().cloned()));
            let h = hilbert_numerator(&lead).reduced();
            ensure!(h.codimension().map_err(err)? == k, "({n},{r},{k}): codim {}", h.codimension().map_err(err)?);
            let e = h.multiplicity().map_err(err)?;
            ensure!(e == BigInt::from(r).pow(k as u32), "({n},{r},{k}): multiplicity {e}");
            let closed = ci_hilbert_series(n, k).map_err(err)?;
            ensure!(h == closed.reduced(), "({n},{r},{k}): series ({})/(1-z)^{} vs closed ({})", h.numerator, h.denominator, closed.numerator);
            cases.push(format!("({n},{r},{k})"));
        }
    }
    Ok(format!("{} cases: {}", cases.len(), cases.join(" ")))
}

fn criterion_7() -> Check {
    let mut got = Vec::new();
    for k in 1..=3 {
        let (gb, _) = jet_gb(5, k, 2, PrimeField::default(), 5 * MIN)?;
        let c = series(&gb).codimension().map_err(err)?;
        ensure!(c == 3 * k, "k={k}: codim {c}");
        ensure!(predicted_codim(5, k, 2).map_err(err)? == Some(c as u64), "k={k}: predictor disagrees");
        got.push(c);
    }
    Ok(format!("codims {got:?}"))
}

fn criterion_8() -> Check {
    let closed = classical_hilbert_series(7, 2).map_err(err)?.reduced();
    let e = closed.multiplicity().map_err(err)?;
    ensure!(e == classical_multiplicity(7, 2).map_err(err)?, "series multiplicity {e} disagrees with the product formula");
    let ideal = jet_generators(7, 1, 2, Rationals).map_err(err)?;
    let polys = ideal.polys();
    ensure!(is_groebner(&polys).map_err(err)?.is_yes(), "4-pfaffians of 7x7 are not a Gröbner basis");
    let lead = MonomialIdeal::new(ideal.ring().nvars(), polys.iter().filter_map(|p| p.leading_monomial().cloned()));
    let h = hilbert_numerator(&lead).reduced();
    ensure!(h == closed, "computed ({}) vs closed ({})", h.numerator, closed.numerator);
    Ok(format!("({})/(1-z)^{}, e = {e}", h.numerator, h.denominator))
}

fn criterion_9() -> Check {
    for k in 2..=8 {
        let p = crux2_witness(k, Rationals).map_err(err)?;
        ensure!(on_variety(&p, 2).map_err(err)?, "k={k}: not on the jet scheme");
        let pf = p.extended_pfaffian().map_err(err)?;
        let tr = pfjet::pfaffian::TruncRing::new(Rationals, 2 * k);
        ensure!(pf == tr.t_pow(2 * k - 1), "k={k}: pfaffian is not t^{}", 2 * k - 1);
        ensure!(!z0_obstruction(&p).map_err(err)?, "k={k}: lies in Z_0");
    }
    Ok("k = 2..8".into())
}

/// Leibniz determinant, independent of the pfaffian code.
fn leibniz<R: CommRing>(ring: &R, m: &[Vec<R::Elem>]) -> R::Elem {
    fn go<R: CommRing>(ring: &R, m: &[Vec<R::Elem>], perm: &mut [usize], at: usize, sign: bool, acc: &mut R::Elem) {
        if at == perm.len() {
            let prod = perm.iter().enumerate().fold(ring.one(), |p, (i, &c)| ring.mul(&p, &m[i][c]));
            *acc = if sign { ring.sub(acc, &prod) } else { ring.add(acc, &prod) };
            return;
        }
        for i in at..perm.len() {
            perm.swap(at, i);
            go(ring, m, perm, at + 1, sign ^ (i != at), acc);
            perm.swap(at, i);
        }
    }
    let mut perm: Vec<usize> = (0..m.len()).collect();
    let mut acc = ring.zero();
    go(ring, m, &mut perm, 0, false, &mut acc);
    acc
}

fn dense<R: CommRing>(ring: &R, m: &SkewMatrix<R::Elem>) -> Vec<Vec<R::Elem>> {
    (1..=m.size()).map(|i| (1..=m.size()).map(|j| m.get(ring, i, j)).collect()).collect()
}

fn criterion_10() -> Check {
    // pf^2 = det, symbolic
    for n in [2, 4] {
        let ring = make_jet_ring(n, 1, Rationals).map_err(err)?;
        let m = SkewMatrix::from_fn(n, |i, j| ring.x(i, j, 0));
        let pf = pfaffian(&ring, &m).map_err(err)?;
        ensure!(&pf * &pf == leibniz(&ring, &dense(&ring, &m)), "symbolic n={n}: pf^2 != det");
        ensure!(pfaffian_expansion(&ring, &m).map_err(err)? == pf, "symbolic n={n}: matching sum != expansion");
    }
    // pf^2 = det and the two pfaffian algorithms, sampled
    let f = PrimeField::default();
    let mut rng = rand::rngs::StdRng::seed_from_u64(2024);
    for n in (2..=8).step_by(2) {
        for _ in 0..5 {
            let m = SkewMatrix::from_fn(n, |_, _| rng.gen_range(0..f.modulus()));
            let pf = pfaffian(&f, &m).map_err(err)?;
            ensure!(CommRing::mul(&f, &pf, &pf) == leibniz(&f, &dense(&f, &m)), "sampled n={n}: pf^2 != det");
            ensure!(pfaffian_expansion(&f, &m).map_err(err)? == pf, "sampled n={n}: matching sum != expansion");
        }
    }
    // low jets are divisible by level-0 variables
    for r in 1..=4usize {
        for n in [2 * r, 2 * r + 1].into_iter().filter(|&n| n <= 8) {
            for k in 1..=r {
                let ideal = jet_generators(n, k, r, f).map_err(err)?;
                let ring = ideal.ring();
                let level0: Vec<usize> = (0..ring.nvars()).filter(|&v| ring.var_at(v).level() == Some(0)).collect();
                for g in ideal.generators() {
                    for t in g.poly.terms() {
                        ensure!(level0.iter().any(|&v| t.mon.exponent(v) > 0), "({n},{k},{r}): term without a level-0 variable");
                    }
                }
            }
        }
    }
    // component codimensions decrease in s exactly when n^2 - 9n + 12 > 0
    for n in 6..=20usize {
        let positive = n * n + 12 > 9 * n;
        for k in 2..=12 {
            let c: Vec<u64> = component_codims_r2(n, k).map_err(err)?.components.iter().map(|c| c.codim).collect();
            ensure!(
                c.windows(2).all(|w| if positive { w[0] > w[1] } else { w[0] < w[1] }),
                "n={n} k={k}: codims {c:?} not monotone in the expected direction"
            );
        }
    }
    for k in 1..=16 {
        let b = component_count_lower_bound(8, k, 2).map_err(err)?;
        ensure!(b.lower == (k / 2 + 1) as u64, "k={k}: bound {}", b.lower);
    }
    Ok("pf^2 = det, matching = expansion, level-0 divisibility, monotonicity flip, component bound".into())
}

fn main() {
    let criteria: [(&str, Duration, fn() -> Check); 10] = [
        ("classical (5,1,2) series", Duration::from_secs(5), criterion_1),
        ("classical (6,1,2) series and multiplicity", Duration::from_secs(10), criterion_2),
        ("jet (5,3,2) codim and numerator", 65 * MIN, criterion_3),
        ("jet (6,2,2) codim, numerator, multiplicity", 65 * MIN, criterion_4),
        ("saturation by x[5,6,0]", 130 * MIN, criterion_5),
        ("complete-intersection suite", MIN, criterion_6),
        ("odd-maximal codim 3k", 5 * MIN, criterion_7),
        ("classical 7x7 cross-check", 2 * MIN, criterion_8),
        ("witness suite", Duration::from_secs(5), criterion_9),
        ("property suites", MIN, criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let t = start.elapsed();
        let verdict = match result {
            Ok(detail) if t <= *budget => format!("PASS  {:>2}. {name} [{:.3}s <= {:?}] {detail}", i + 1, t.as_secs_f64(), budget),
            Ok(detail) => format!("FAIL  {:>2}. {name} [{:.3}s > {:?}] {detail}", i + 1, t.as_secs_f64(), budget),
            Err(e) => format!("FAIL  {:>2}. {name} [{:.3}s] {e}", i + 1, t.as_secs_f64()),
        };
        if verdict.starts_with("FAIL") {
            failed += 1;
        }
        println!("{verdict}");
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
