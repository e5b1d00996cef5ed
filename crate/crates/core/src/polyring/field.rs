//! Coefficient rings and fields.
//!
//! [`CommRing`] is the minimal interface the pfaffian routines need. [`Field`]
//! adds inversion and the hooks the Gröbner engine uses to run fraction-free.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::PolyError;

/// Default modulus for prime-field runs.
pub const DEFAULT_PRIME: u32 = 32003;

/// A commutative ring with explicit context.
pub trait CommRing: Clone + Send + Sync {
    type Elem: Clone + fmt::Debug + PartialEq + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn from_i64(&self, v: i64) -> Self::Elem {
        let one = self.one();
        let mut acc = self.zero();
        let mut base = one;
        let mut m = v.unsigned_abs();
        while m > 0 {
            if m & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            base = self.add(&base, &base);
            m >>= 1;
        }
        if v < 0 {
            self.neg(&acc)
        } else {
            acc
        }
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
}

/// Identifies a coefficient field at runtime; polynomials over different tags never mix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldTag {
    Rational,
    Prime(u32),
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Rational => write!(f, "q"),
            FieldTag::Prime(p) => write!(f, "p:{p}"),
        }
    }
}

impl std::str::FromStr for FieldTag {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") || s.eq_ignore_ascii_case("qq") {
            return Ok(FieldTag::Rational);
        }
        if s.eq_ignore_ascii_case("p") {
            return Ok(FieldTag::Prime(DEFAULT_PRIME));
        }
        if let Some(m) = s.strip_prefix("p:") {
            let p: u32 = m
                .parse()
                .map_err(|_| PolyError::Parse(format!("bad modulus `{m}`")))?;
            PrimeField::new(p)?;
            return Ok(FieldTag::Prime(p));
        }
        Err(PolyError::Parse(format!("unknown field `{s}` (expected q or p:<modulus>)")))
    }
}

/// Fraction-free coefficient domain used inside Gröbner reductions.
///
/// For a prime field this is the field itself; for the rationals it is the
/// integers, with every intermediate polynomial kept primitive.
pub trait ReductionDomain: Clone + Send + Sync {
    type C: Clone + fmt::Debug + PartialEq + Send + Sync;

    fn is_zero(&self, a: &Self::C) -> bool;
    fn is_one(&self, a: &Self::C) -> bool;
    fn mul(&self, a: &Self::C, b: &Self::C) -> Self::C;
    fn sub(&self, a: &Self::C, b: &Self::C) -> Self::C;
    fn neg(&self, a: &Self::C) -> Self::C;
    /// Returns `(a, b)` with `a * lc_f == b * lc_g`; `a == None` stands for one.
    fn cancel(&self, lc_f: &Self::C, lc_g: &Self::C) -> (Option<Self::C>, Self::C);
    /// Divides out content (integers) or makes monic (fields).
    fn normalize(&self, coeffs: &mut [Self::C]);
}

/// A coefficient field.
pub trait Field: CommRing + fmt::Debug + PartialEq + 'static {
    type Domain: ReductionDomain;

    fn tag(&self) -> FieldTag;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Self::Elem, PolyError>;
    /// Canonical integer ratio used for printing. Prime-field elements use the
    /// symmetric representative.
    fn to_ratio(&self, a: &Self::Elem) -> (BigInt, BigInt);

    fn domain(&self) -> Self::Domain;
    /// Maps a coefficient vector into the reduction domain (up to a unit).
    fn lift(&self, coeffs: &[Self::Elem]) -> Vec<<Self::Domain as ReductionDomain>::C>;
    /// Maps back, dividing by the first coefficient (monic result).
    fn lower_monic(&self, coeffs: &[<Self::Domain as ReductionDomain>::C]) -> Vec<Self::Elem>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|ib| self.mul(a, &ib))
    }
}

// ---------------------------------------------------------------------------
// Rationals

/// The field of rational numbers with arbitrary-precision coefficients.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl CommRing for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
}

impl Field for Rationals {
    type Domain = Integers;

    fn tag(&self) -> FieldTag {
        FieldTag::Rational
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<BigRational, PolyError> {
        if den.is_zero() {
            return Err(PolyError::Parse("zero denominator".into()));
        }
        Ok(BigRational::new(num.clone(), den.clone()))
    }
    fn to_ratio(&self, a: &BigRational) -> (BigInt, BigInt) {
        (a.numer().clone(), a.denom().clone())
    }
    fn domain(&self) -> Integers {
        Integers
    }
    fn lift(&self, coeffs: &[BigRational]) -> Vec<BigInt> {
        let lcm = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut out: Vec<BigInt> = coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        Integers.normalize(&mut out);
        out
    }
    fn lower_monic(&self, coeffs: &[BigInt]) -> Vec<BigRational> {
        let Some(lead) = coeffs.first() else {
            return Vec::new();
        };
        coeffs
            .iter()
            .map(|c| BigRational::new(c.clone(), lead.clone()))
            .collect()
    }
}

/// Fraction-free domain behind [`Rationals`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Integers;

impl ReductionDomain for Integers {
    type C = BigInt;

    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &BigInt) -> bool {
        a.is_one()
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn cancel(&self, lc_f: &BigInt, lc_g: &BigInt) -> (Option<BigInt>, BigInt) {
        if lc_g.is_one() {
            return (None, lc_f.clone());
        }
        let g = lc_f.gcd(lc_g);
        let mut a = lc_g / &g;
        let mut b = lc_f / &g;
        if a.is_negative() {
            a = -a;
            b = -b;
        }
        if a.is_one() {
            (None, b)
        } else {
            (Some(a), b)
        }
    }
    fn normalize(&self, coeffs: &mut [BigInt]) {
        let Some(first) = coeffs.first() else {
            return;
        };
        let mut g = BigInt::zero();
        for c in coeffs.iter() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        if first.is_negative() {
            g = -g;
        }
        if g.is_one() || g.is_zero() {
            return;
        }
        for c in coeffs.iter_mut() {
            *c = &*c / &g;
        }
    }
}

// ---------------------------------------------------------------------------
// Prime fields

/// `Z/pZ` for a prime `p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self, PolyError> {
        if !(2..1 << 31).contains(&p) || !is_prime(p) {
            return Err(PolyError::BadModulus(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    #[inline]
    fn reduce(&self, v: u64) -> u32 {
        (v % self.p as u64) as u32
    }

    pub fn pow(&self, mut b: u32, mut e: u64) -> u32 {
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.reduce(acc as u64 * b as u64);
            }
            b = self.reduce(b as u64 * b as u64);
            e >>= 1;
        }
        acc
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: DEFAULT_PRIME }
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl CommRing for PrimeField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + *b as u64;
        if s >= self.p as u64 {
            (s - self.p as u64) as u32
        } else {
            s as u32
        }
    }
    #[inline]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        if a >= b {
            a - b
        } else {
            self.p - (b - a)
        }
    }
    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        self.reduce(*a as u64 * *b as u64)
    }
    fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }
}

impl Field for PrimeField {
    type Domain = PrimeField;

    fn tag(&self) -> FieldTag {
        FieldTag::Prime(self.p)
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        (*a != 0).then(|| self.pow(*a, self.p as u64 - 2))
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<u32, PolyError> {
        let p = BigInt::from(self.p);
        let n = num.mod_floor(&p).to_u32().unwrap_or(0);
        let d = den.mod_floor(&p).to_u32().unwrap_or(0);
        let di = self
            .inv(&d)
            .ok_or_else(|| PolyError::Parse(format!("denominator {den} vanishes mod {}", self.p)))?;
        Ok(CommRing::mul(self, &n, &di))
    }
    fn to_ratio(&self, a: &u32) -> (BigInt, BigInt) {
        let v = if *a > self.p / 2 {
            *a as i64 - self.p as i64
        } else {
            *a as i64
        };
        (BigInt::from(v), BigInt::one())
    }
    fn domain(&self) -> PrimeField {
        *self
    }
    fn lift(&self, coeffs: &[u32]) -> Vec<u32> {
        let mut out = coeffs.to_vec();
        self.normalize(&mut out);
        out
    }
    fn lower_monic(&self, coeffs: &[u32]) -> Vec<u32> {
        let mut out = coeffs.to_vec();
        self.normalize(&mut out);
        out
    }
}

impl ReductionDomain for PrimeField {
    type C = u32;

    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn is_one(&self, a: &u32) -> bool {
        *a == 1
    }
    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        CommRing::mul(self, a, b)
    }
    #[inline]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        CommRing::sub(self, a, b)
    }
    fn neg(&self, a: &u32) -> u32 {
        CommRing::neg(self, a)
    }
    fn cancel(&self, lc_f: &u32, lc_g: &u32) -> (Option<u32>, u32) {
        if *lc_g == 1 {
            return (None, *lc_f);
        }
        let inv = self.inv(lc_g).expect("nonzero leading coefficient");
        (None, CommRing::mul(self, lc_f, &inv))
    }
    fn normalize(&self, coeffs: &mut [u32]) {
        let Some(&lead) = coeffs.first() else {
            return;
        };
        if lead == 1 || lead == 0 {
            return;
        }
        let inv = self.inv(&lead).expect("nonzero");
        for c in coeffs.iter_mut() {
            *c = CommRing::mul(self, c, &inv);
        }
    }
}
