//! Exact scalar fields: the rationals and prime fields `F_p`.
//!
//! Algorithms in this crate are generic over a [`Field`] context object that
//! owns the arithmetic; elements are plain values (`BigRational` for the
//! rationals, a reduced `u64` residue for `F_p`). [`Scalar`] is the dynamic,
//! self-describing carrier used at serialization boundaries, where two values
//! from different fields must be detected rather than silently mixed.

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: FieldSpec, right: FieldSpec },
    #[error("{0} is not a prime modulus")]
    NotPrime(u64),
    #[error("{field} has no primitive {n}-th root of unity")]
    NoSuchRoot { field: FieldSpec, n: u64 },
    #[error("cannot parse scalar {text:?}: {reason}")]
    Parse { text: String, reason: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Repr {
    Rationals,
    Prime(u64),
}

/// Which field a value lives in. Prime moduli are checked on construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldSpec(Repr);

impl FieldSpec {
    pub const RATIONALS: FieldSpec = FieldSpec(Repr::Rationals);

    pub fn prime(p: u64) -> Result<Self, FieldError> {
        if is_prime(p) {
            Ok(FieldSpec(Repr::Prime(p)))
        } else {
            Err(FieldError::NotPrime(p))
        }
    }

    pub fn is_rationals(&self) -> bool {
        matches!(self.0, Repr::Rationals)
    }

    /// The prime modulus, or `None` for the rationals.
    pub fn modulus(&self) -> Option<u64> {
        match self.0 {
            Repr::Rationals => None,
            Repr::Prime(p) => Some(p),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Repr::Rationals => write!(f, "Q"),
            Repr::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

/// Arithmetic context for an exact field.
pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Ord + Send + Sync;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `None` exactly when `a` is zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, n: i64) -> Self::Elem;
    /// Image of a rational number; fails in `F_p` when `p` divides the denominator.
    fn from_rational(&self, q: &BigRational) -> Result<Self::Elem, FieldError>;
    fn render(&self, a: &Self::Elem) -> String;
    /// Every element in a fixed order, for finite fields only.
    fn elements(&self) -> Option<Vec<Self::Elem>>;
    /// Least primitive `n`-th root of unity in the field's canonical order.
    fn primitive_root_of_unity(&self, n: u64) -> Result<Self::Elem, FieldError>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, FieldError> {
        let inv = self.inv(b).ok_or(FieldError::DivisionByZero)?;
        Ok(self.mul(a, &inv))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Parses `"a"` or `"a/b"` with integer `a`, `b`.
    fn parse(&self, text: &str) -> Result<Self::Elem, FieldError> {
        let q = parse_rational(text)?;
        self.from_rational(&q).map_err(|e| match e {
            FieldError::DivisionByZero => FieldError::Parse {
                text: text.to_string(),
                reason: format!("denominator vanishes in {}", self.spec()),
            },
            other => other,
        })
    }
}

pub fn parse_rational(text: &str) -> Result<BigRational, FieldError> {
    let err = |reason: &str| FieldError::Parse {
        text: text.to_string(),
        reason: reason.to_string(),
    };
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| err("bad numerator"))?;
    let den = BigInt::from_str(den).map_err(|_| err("bad denominator"))?;
    if den.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(BigRational::new(num, den))
}

/// The field of rational numbers, backed by arbitrary-precision integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::RATIONALS
    }
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
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_rational(&self, q: &BigRational) -> Result<BigRational, FieldError> {
        Ok(q.clone())
    }
    fn render(&self, a: &BigRational) -> String {
        a.to_string()
    }
    fn elements(&self) -> Option<Vec<BigRational>> {
        None
    }
    fn primitive_root_of_unity(&self, n: u64) -> Result<BigRational, FieldError> {
        match n {
            1 => Ok(self.one()),
            2 => Ok(self.from_i64(-1)),
            _ => Err(FieldError::NoSuchRoot { field: self.spec(), n }),
        }
    }
}

/// `Z/pZ` for a prime `p < 2^64`; elements are residues in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        FieldSpec::prime(p).map(|_| PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn reduce_big(&self, n: &BigInt) -> u64 {
        let m = BigInt::from(self.p);
        n.mod_floor(&m).to_u64().expect("residue fits in u64")
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn spec(&self) -> FieldSpec {
        FieldSpec(Repr::Prime(self.p))
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + self.p as u128 - *b as u128) % self.p as u128) as u64
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.p)
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(pow_mod(*a, self.p - 2, self.p))
        }
    }
    fn from_i64(&self, n: i64) -> u64 {
        (n as i128).rem_euclid(self.p as i128) as u64
    }
    fn from_rational(&self, q: &BigRational) -> Result<u64, FieldError> {
        let num = self.reduce_big(q.numer());
        let den = self.reduce_big(q.denom());
        self.div(&num, &den)
    }
    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
    fn elements(&self) -> Option<Vec<u64>> {
        Some((0..self.p).collect())
    }
    fn primitive_root_of_unity(&self, n: u64) -> Result<u64, FieldError> {
        let p = self.p;
        if n == 0 || !(p - 1).is_multiple_of(n) {
            return Err(FieldError::NoSuchRoot { field: self.spec(), n });
        }
        if n == 1 {
            return Ok(1);
        }
        let primes = prime_factors(n);
        let has_order_n = |z: u64| primes.iter().all(|q| pow_mod(z, n / q, p) != 1);
        // Some x^((p-1)/n) generates the n-th roots; its primitive powers are all of them.
        let generator = (2..p)
            .map(|x| pow_mod(x, (p - 1) / n, p))
            .find(|&z| has_order_n(z))
            .expect("the multiplicative group is cyclic of order divisible by n");
        let least = (1..=n)
            .filter(|k| k.gcd(&n) == 1)
            .map(|k| pow_mod(generator, k, p))
            .min()
            .expect("n >= 2 has a unit residue");
        Ok(least)
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        e >>= 1;
    }
    acc
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Deterministic Miller-Rabin; the first twelve prime bases cover all of `u64`.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum ScalarValue {
    Rational(BigRational),
    Residue(u64),
}

/// A field element that knows which field it belongs to.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    field: FieldSpec,
    value: ScalarValue,
}

impl Scalar {
    pub fn parse(field: FieldSpec, text: &str) -> Result<Self, FieldError> {
        match field.modulus() {
            None => Ok(Scalar::rational(Rationals.parse(text)?)),
            Some(p) => Ok(Scalar::residue(field, PrimeField { p }.parse(text)?)),
        }
    }

    pub fn from_i64(field: FieldSpec, n: i64) -> Self {
        match field.modulus() {
            None => Scalar::rational(Rationals.from_i64(n)),
            Some(p) => Scalar::residue(field, PrimeField { p }.from_i64(n)),
        }
    }

    pub fn rational(q: BigRational) -> Self {
        Scalar {
            field: FieldSpec::RATIONALS,
            value: ScalarValue::Rational(q),
        }
    }

    fn residue(field: FieldSpec, r: u64) -> Self {
        Scalar {
            field,
            value: ScalarValue::Residue(r),
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            ScalarValue::Rational(q) => q.is_zero(),
            ScalarValue::Residue(r) => *r == 0,
        }
    }

    /// The residue in `[0, p)`, when this is an `F_p` element.
    pub fn as_residue(&self) -> Option<u64> {
        match self.value {
            ScalarValue::Residue(r) => Some(r),
            ScalarValue::Rational(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.value {
            ScalarValue::Rational(q) => Some(q),
            ScalarValue::Residue(_) => None,
        }
    }

    fn check(&self, other: &Scalar) -> Result<(), FieldError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch {
                left: self.field,
                right: other.field,
            })
        }
    }

    fn combine(
        &self,
        other: &Scalar,
        on_q: impl Fn(&Rationals, &BigRational, &BigRational) -> Result<BigRational, FieldError>,
        on_p: impl Fn(&PrimeField, &u64, &u64) -> Result<u64, FieldError>,
    ) -> Result<Scalar, FieldError> {
        self.check(other)?;
        match (&self.value, &other.value) {
            (ScalarValue::Rational(a), ScalarValue::Rational(b)) => {
                Ok(Scalar::rational(on_q(&Rationals, a, b)?))
            }
            (ScalarValue::Residue(a), ScalarValue::Residue(b)) => {
                let f = PrimeField {
                    p: self.field.modulus().expect("residues carry a modulus"),
                };
                Ok(Scalar::residue(self.field, on_p(&f, a, b)?))
            }
            _ => unreachable!("equal field specs imply equal representations"),
        }
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.combine(other, |f, a, b| Ok(f.add(a, b)), |f, a, b| Ok(f.add(a, b)))
    }

    pub fn sub(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.combine(other, |f, a, b| Ok(f.sub(a, b)), |f, a, b| Ok(f.sub(a, b)))
    }

    pub fn mul(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.combine(other, |f, a, b| Ok(f.mul(a, b)), |f, a, b| Ok(f.mul(a, b)))
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.combine(other, |f, a, b| f.div(a, b), |f, a, b| f.div(a, b))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            ScalarValue::Rational(q) => write!(f, "{q}"),
            ScalarValue::Residue(r) => write!(f, "{r}"),
        }
    }
}

/// Least primitive `n`-th root of unity of `field`.
pub fn primitive_root_of_unity(field: FieldSpec, n: u64) -> Result<Scalar, FieldError> {
    match field.modulus() {
        None => Rationals.primitive_root_of_unity(n).map(Scalar::rational),
        Some(p) => PrimeField { p }
            .primitive_root_of_unity(n)
            .map(|r| Scalar::residue(field, r)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;
    use proptest::prelude::*;

    fn f(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    #[test]
    fn rational_sum_in_lowest_terms() {
        let a = Scalar::parse(FieldSpec::RATIONALS, "1/3").unwrap();
        let b = Scalar::parse(FieldSpec::RATIONALS, "1/6").unwrap();
        assert_eq!(a.add(&b).unwrap().to_string(), "1/2");
        let c = Scalar::parse(FieldSpec::RATIONALS, "4/-6").unwrap();
        assert_eq!(c.to_string(), "-2/3");
    }

    #[test]
    fn residue_products_and_quotients() {
        let two = Scalar::from_i64(f(5), 2);
        let three = Scalar::from_i64(f(5), 3);
        assert_eq!(two.mul(&three).unwrap().as_residue(), Some(1));

        let one = Scalar::from_i64(f(7), 1);
        let three = Scalar::from_i64(f(7), 3);
        let q = one.div(&three).unwrap();
        assert_eq!(q.as_residue(), Some(5));
        assert_eq!((3 * 5) % 7, 1);
    }

    #[test]
    fn division_by_zero_and_mismatch() {
        let one = Scalar::from_i64(f(7), 1);
        let zero = Scalar::from_i64(f(7), 0);
        assert_eq!(one.div(&zero), Err(FieldError::DivisionByZero));
        let q = Scalar::from_i64(FieldSpec::RATIONALS, 1);
        assert!(matches!(one.add(&q), Err(FieldError::FieldMismatch { .. })));
        let other = Scalar::from_i64(f(5), 1);
        assert!(matches!(one.mul(&other), Err(FieldError::FieldMismatch { .. })));
        let qz = Scalar::from_i64(FieldSpec::RATIONALS, 0);
        assert_eq!(q.div(&qz), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn residue_parsing_reduces_fractions() {
        let s = Scalar::parse(f(5), "1/2").unwrap();
        assert_eq!(s.as_residue(), Some(3));
        assert_eq!(Scalar::parse(f(5), "-1").unwrap().as_residue(), Some(4));
        assert!(Scalar::parse(f(5), "1/5").is_err());
        assert!(Scalar::parse(f(5), "x").is_err());
    }

    #[test]
    fn modulus_must_be_prime() {
        assert_eq!(FieldSpec::prime(4), Err(FieldError::NotPrime(4)));
        assert!(FieldSpec::prime(1).is_err());
        assert!(FieldSpec::prime(0).is_err());
        assert!(FieldSpec::prime(2).is_ok());
        assert!(FieldSpec::prime(2_305_843_009_213_693_951).is_ok());
        assert!(FieldSpec::prime(3_215_031_751).is_err()); // strong pseudoprime to bases 2,3,5,7
    }

    #[test]
    fn primality_matches_trial_division_below_5000() {
        for n in 0u64..5000 {
            let trial = n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
            assert_eq!(is_prime(n), trial, "n = {n}");
        }
    }

    #[test]
    fn primitive_roots_examples() {
        // Powers of 2 mod 5: 2, 4, 3, 1.
        assert_eq!(primitive_root_of_unity(f(5), 4).unwrap().as_residue(), Some(2));
        // 2^3 = 8 = 1 mod 7, 2 and 4 differ from 1.
        assert_eq!(primitive_root_of_unity(f(7), 3).unwrap().as_residue(), Some(2));
        assert_eq!(
            primitive_root_of_unity(FieldSpec::RATIONALS, 2).unwrap().to_string(),
            "-1"
        );
        assert_eq!(primitive_root_of_unity(f(13), 4).unwrap().as_residue(), Some(5));
    }

    #[test]
    fn primitive_root_failures() {
        assert!(matches!(
            primitive_root_of_unity(f(7), 4),
            Err(FieldError::NoSuchRoot { n: 4, .. })
        ));
        assert!(primitive_root_of_unity(FieldSpec::RATIONALS, 3).is_err());
        assert!(primitive_root_of_unity(FieldSpec::RATIONALS, 4).is_err());
        assert!(primitive_root_of_unity(f(5), 0).is_err());
    }

    #[test]
    fn primitive_root_is_least_by_exhaustion() {
        for &p in &[5u64, 7, 11, 13, 17, 19, 29, 31, 37, 41] {
            let field = PrimeField::new(p).unwrap();
            for n in 1..p {
                if (p - 1) % n != 0 {
                    continue;
                }
                let order = |x: u64| (1..=n).find(|&k| pow_mod(x, k, p) == 1);
                let expected = (1..p).find(|&x| order(x) == Some(n)).unwrap();
                assert_eq!(field.primitive_root_of_unity(n).unwrap(), expected, "p={p} n={n}");
            }
        }
    }

    fn rational() -> impl Strategy<Value = BigRational> {
        (-50i64..50, 1i64..20).prop_map(|(a, b)| BigRational::new(a.into(), b.into()))
    }

    proptest! {
        #[test]
        fn rational_field_axioms(a in rational(), b in rational(), c in rational()) {
            let q = Rationals;
            prop_assert_eq!(q.mul(&q.mul(&a, &b), &c), q.mul(&a, &q.mul(&b, &c)));
            prop_assert_eq!(q.add(&q.add(&a, &b), &c), q.add(&a, &q.add(&b, &c)));
            prop_assert_eq!(q.mul(&a, &q.add(&b, &c)), q.add(&q.mul(&a, &b), &q.mul(&a, &c)));
            if let Some(ai) = q.inv(&a) {
                prop_assert_eq!(q.mul(&a, &ai), q.one());
            } else {
                prop_assert!(q.is_zero(&a));
            }
            prop_assert!(q.is_zero(&q.add(&a, &q.neg(&a))));
            // lowest terms with positive denominator
            prop_assert!(a.denom().is_positive());
            prop_assert!(a.numer().gcd(a.denom()).is_one() || a.is_zero());
        }

        #[test]
        fn prime_field_axioms(pi in 0usize..6, a in 0u64..1000, b in 0u64..1000, c in 0u64..1000) {
            let p = [2u64, 3, 5, 7, 13, 1_000_000_007][pi];
            let fp = PrimeField::new(p).unwrap();
            let (a, b, c) = (a % p, b % p, c % p);
            prop_assert_eq!(fp.mul(&fp.mul(&a, &b), &c), fp.mul(&a, &fp.mul(&b, &c)));
            prop_assert_eq!(fp.mul(&a, &fp.add(&b, &c)), fp.add(&fp.mul(&a, &b), &fp.mul(&a, &c)));
            prop_assert_eq!(fp.sub(&fp.add(&a, &b), &b), a);
            if a != 0 {
                prop_assert_eq!(fp.mul(&a, &fp.inv(&a).unwrap()), 1);
            }
            prop_assert!(fp.add(&a, &fp.neg(&a)) < p && fp.add(&a, &fp.neg(&a)) == 0);
        }

        #[test]
        fn primitive_root_has_exact_order(pi in 0usize..5, n in 1u64..40) {
            let p = [5u64, 7, 13, 31, 41][pi];
            let fp = PrimeField::new(p).unwrap();
            match fp.primitive_root_of_unity(n) {
                Ok(e) => {
                    prop_assert_eq!((p - 1) % n, 0);
                    let mut acc = 1;
                    for k in 1..=n {
                        acc = fp.mul(&acc, &e);
                        prop_assert_eq!(acc == 1, k == n);
                    }
                }
                Err(_) => prop_assert!(!(p - 1).is_multiple_of(n)),
            }
        }
    }
}
