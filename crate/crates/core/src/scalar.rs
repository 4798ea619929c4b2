//! Exact scalars: big integers, canonical big rationals and residues modulo a
//! prime, behind a single runtime-tagged [`Scalar`] type.
//!
//! Every [`crate::Matrix`] carries a [`RingSpec`] and all of its entries live
//! in that ring. The arithmetic operators on `Scalar` assume both operands
//! come from the same ring and panic otherwise; mixing rings is a logic error
//! that the matrix layer rules out before any arithmetic happens.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A prime modulus. Construction runs deterministic trial division.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Modulus(u64);

impl Modulus {
    pub fn new(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Modulus(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

/// Deterministic primality test by trial division up to `sqrt(p)`.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d <= p / d {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Which ring a matrix (and hence the solver pipeline) lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingSpec {
    Integer,
    Rational,
    PrimeField(Modulus),
}

impl RingSpec {
    pub fn prime_field(p: u64) -> Result<Self> {
        Modulus::new(p).map(RingSpec::PrimeField)
    }

    pub fn is_field(self) -> bool {
        !matches!(self, RingSpec::Integer)
    }

    pub fn modulus(self) -> Option<u64> {
        match self {
            RingSpec::PrimeField(m) => Some(m.get()),
            _ => None,
        }
    }

    /// The ring both `self` and `other` embed into, if any (ℤ ⊂ ℚ).
    pub fn common(self, other: RingSpec) -> Result<RingSpec> {
        use RingSpec::*;
        match (self, other) {
            (a, b) if a == b => Ok(a),
            (Integer, Rational) | (Rational, Integer) => Ok(Rational),
            (a, b) => Err(Error::RingMismatch(a, b)),
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Integer => f.write_str("Z"),
            RingSpec::Rational => f.write_str("Q"),
            RingSpec::PrimeField(m) => write!(f, "GF({})", m.get()),
        }
    }
}

/// Least nonnegative residue modulo a prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u64,
    modulus: Modulus,
}

impl Residue {
    pub fn new(value: u64, modulus: Modulus) -> Self {
        Residue { value: value % modulus.get(), modulus }
    }

    pub fn from_bigint(value: &BigInt, modulus: Modulus) -> Self {
        let p = BigInt::from(modulus.get());
        let r = ((value % &p) + &p) % &p;
        Residue { value: r.to_u64().expect("residue below a u64 modulus"), modulus }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> Modulus {
        self.modulus
    }

    fn check(self, other: Residue) {
        assert_eq!(self.modulus, other.modulus, "residues from different prime fields");
    }

    fn add(self, other: Residue) -> Residue {
        self.check(other);
        let p = self.modulus.get() as u128;
        let v = (self.value as u128 + other.value as u128) % p;
        Residue { value: v as u64, modulus: self.modulus }
    }

    fn neg(self) -> Residue {
        let p = self.modulus.get();
        Residue { value: (p - self.value) % p, modulus: self.modulus }
    }

    fn mul(self, other: Residue) -> Residue {
        self.check(other);
        let p = self.modulus.get() as u128;
        let v = (self.value as u128 * other.value as u128) % p;
        Residue { value: v as u64, modulus: self.modulus }
    }

    pub fn pow(self, mut exp: u64) -> Residue {
        let mut base = self;
        let mut acc = Residue { value: 1 % self.modulus.get(), modulus: self.modulus };
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            exp >>= 1;
        }
        acc
    }

    fn inverse(self) -> Result<Residue> {
        if self.value == 0 {
            return Err(Error::ZeroInverse);
        }
        // Fermat: x^(p-2) = x^-1 for prime p.
        Ok(self.pow(self.modulus.get() - 2))
    }
}

/// Builds the canonical rational `num/den`: positive denominator, lowest terms.
pub fn normalize(num: BigInt, den: BigInt) -> Result<BigRational> {
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok(BigRational::new(num, den))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Integer(BigInt),
    Rational(BigRational),
    Residue(Residue),
}

impl Scalar {
    pub fn zero(ring: RingSpec) -> Scalar {
        Scalar::from_i64(0, ring)
    }

    pub fn one(ring: RingSpec) -> Scalar {
        Scalar::from_i64(1, ring)
    }

    pub fn from_i64(v: i64, ring: RingSpec) -> Scalar {
        Scalar::from_bigint(BigInt::from(v), ring)
    }

    pub fn from_bigint(v: BigInt, ring: RingSpec) -> Scalar {
        match ring {
            RingSpec::Integer => Scalar::Integer(v),
            RingSpec::Rational => Scalar::Rational(BigRational::from_integer(v)),
            RingSpec::PrimeField(m) => Scalar::Residue(Residue::from_bigint(&v, m)),
        }
    }

    /// `num/den` in ℚ. Fails on a zero denominator.
    pub fn fraction(num: i64, den: i64) -> Result<Scalar> {
        normalize(BigInt::from(num), BigInt::from(den)).map(Scalar::Rational)
    }

    pub fn ring(&self) -> RingSpec {
        match self {
            Scalar::Integer(_) => RingSpec::Integer,
            Scalar::Rational(_) => RingSpec::Rational,
            Scalar::Residue(r) => RingSpec::PrimeField(r.modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Integer(v) => v.is_zero(),
            Scalar::Rational(v) => v.is_zero(),
            Scalar::Residue(r) => r.value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Integer(v) => v.is_one(),
            Scalar::Rational(v) => v.is_one(),
            Scalar::Residue(r) => r.value == 1,
        }
    }

    /// True for integers, and for rationals with denominator 1.
    pub fn is_integral(&self) -> bool {
        match self {
            Scalar::Integer(_) => true,
            Scalar::Rational(v) => v.is_integer(),
            Scalar::Residue(_) => false,
        }
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        match self {
            Scalar::Integer(v) => Some(v.clone()),
            Scalar::Rational(v) if v.is_integer() => Some(v.to_integer()),
            _ => None,
        }
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        match self {
            Scalar::Integer(v) => Some(BigRational::from_integer(v.clone())),
            Scalar::Rational(v) => Some(v.clone()),
            Scalar::Residue(_) => None,
        }
    }

    /// Re-expresses `self` in `ring`. Only the embedding ℤ → ℚ and the
    /// demotion of integral rationals back to ℤ are allowed.
    pub fn to_ring(&self, ring: RingSpec) -> Result<Scalar> {
        if self.ring() == ring {
            return Ok(self.clone());
        }
        match (self, ring) {
            (Scalar::Integer(v), RingSpec::Rational) => {
                Ok(Scalar::Rational(BigRational::from_integer(v.clone())))
            }
            (Scalar::Rational(v), RingSpec::Integer) if v.is_integer() => {
                Ok(Scalar::Integer(v.to_integer()))
            }
            (Scalar::Rational(_), RingSpec::Integer) => {
                Err(Error::NotAUnit(format!("{self} (non-integral)")))
            }
            _ => Err(Error::RingMismatch(self.ring(), ring)),
        }
    }

    /// Multiplicative inverse. In ℤ only the units ±1 are invertible.
    pub fn inverse(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        match self {
            Scalar::Integer(v) => {
                if v.abs().is_one() {
                    Ok(Scalar::Integer(v.clone()))
                } else {
                    Err(Error::NotAUnit(v.to_string()))
                }
            }
            Scalar::Rational(v) => Ok(Scalar::Rational(v.recip())),
            Scalar::Residue(r) => r.inverse().map(Scalar::Residue),
        }
    }

    /// `self / other` where `other` is invertible in the ring.
    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self * &other.inverse()?)
    }

    pub fn parse(text: &str, ring: RingSpec) -> Result<Scalar> {
        let bad = || Error::ParseScalar { text: text.to_string(), ring };
        let t = text.trim();
        match ring {
            RingSpec::Integer => BigInt::from_str(t).map(Scalar::Integer).map_err(|_| bad()),
            RingSpec::Rational => {
                let (num, den) = match t.split_once('/') {
                    Some((n, d)) => (n.trim(), d.trim()),
                    None => (t, "1"),
                };
                let num = BigInt::from_str(num).map_err(|_| bad())?;
                let den = BigInt::from_str(den).map_err(|_| bad())?;
                normalize(num, den).map(Scalar::Rational).map_err(|_| bad())
            }
            RingSpec::PrimeField(m) => {
                let v = BigInt::from_str(t).map_err(|_| bad())?;
                Ok(Scalar::Residue(Residue::from_bigint(&v, m)))
            }
        }
    }

    fn mismatch(a: &Scalar, b: &Scalar) -> ! {
        panic!("scalar ring mismatch: {} vs {}", a.ring(), b.ring())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Integer(v) => write!(f, "{v}"),
            Scalar::Rational(v) if v.is_integer() => write!(f, "{}", v.numer()),
            Scalar::Rational(v) => write!(f, "{}/{}", v.numer(), v.denom()),
            Scalar::Residue(r) => write!(f, "{}", r.value),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Integer(a), Scalar::Integer(b)) => Scalar::Integer(a + b),
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue(a), Scalar::Residue(b)) => Scalar::Residue(a.add(*b)),
            _ => Scalar::mismatch(self, rhs),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Integer(a), Scalar::Integer(b)) => Scalar::Integer(a - b),
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Residue(a), Scalar::Residue(b)) => Scalar::Residue(a.add(b.neg())),
            _ => Scalar::mismatch(self, rhs),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Integer(a), Scalar::Integer(b)) => Scalar::Integer(a * b),
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue(a), Scalar::Residue(b)) => Scalar::Residue(a.mul(*b)),
            _ => Scalar::mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Integer(a) => Scalar::Integer(-a),
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Residue(a) => Scalar::Residue(a.neg()),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}
