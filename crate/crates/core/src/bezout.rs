//! Positive gcd and canonical Bezout data for the integer reduction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// `m = gcd(a, b) > 0`, the cofactors `p = a/m`, `q = b/m`, and `r`, `s`
/// with `p*s - q*r = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BezoutTriple {
    pub m: BigInt,
    pub p: BigInt,
    pub q: BigInt,
    pub r: BigInt,
    pub s: BigInt,
}

impl BezoutTriple {
    pub fn determinant(&self) -> BigInt {
        &self.p * &self.s - &self.q * &self.r
    }
}

pub fn gcd(a: &BigInt, b: &BigInt) -> Result<BigInt> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::GcdOfZeros);
    }
    let (mut x, mut y) = (a.abs(), b.abs());
    while !y.is_zero() {
        let t = &x % &y;
        x = y;
        y = t;
    }
    Ok(x)
}

/// Extended Euclid, then canonicalized.
///
/// For `q != 0`, `s` is the representative of `p^-1 mod |q|` in `1..=|q|`
/// (shifted down by `|q|` in the single case where that would push `|r|`
/// past `max(1, |p|)`, which only happens for `|q| = 1`, `p < 0`). For
/// `q = 0` we have `p = ±1`, and the pair is `s = p`, `r = 0`. The result
/// always satisfies `|s| <= max(1, |q|)` and `|r| <= max(1, |p|)`.
pub fn extended_gcd(a: &BigInt, b: &BigInt) -> Result<BezoutTriple> {
    let m = gcd(a, b)?;
    let p = a / &m;
    let q = b / &m;

    if q.is_zero() {
        return Ok(BezoutTriple { s: p.clone(), r: BigInt::zero(), m, p, q });
    }

    // Euclid on (p, |q|): track x with p*x ≡ g (mod |q|).
    let modulus = q.abs();
    let (mut old_r, mut cur_r) = (p.mod_floor(&modulus), modulus.clone());
    let (mut old_x, mut cur_x) = (BigInt::one(), BigInt::zero());
    while !cur_r.is_zero() {
        let quot = old_r.div_floor(&cur_r);
        let next_r = &old_r - &quot * &cur_r;
        old_r = std::mem::replace(&mut cur_r, next_r);
        let next_x = &old_x - &quot * &cur_x;
        old_x = std::mem::replace(&mut cur_x, next_x);
    }
    debug_assert!(old_r.is_one() || modulus.is_one());

    let mut s = old_x.mod_floor(&modulus);
    if s.is_zero() {
        s = modulus.clone();
    }
    let bound = std::cmp::max(BigInt::one(), p.abs());
    let mut r = (&p * &s - BigInt::one()) / &q;
    if r.abs() > bound {
        s -= &modulus;
        r = (&p * &s - BigInt::one()) / &q;
    }
    Ok(BezoutTriple { m, p, q, r, s })
}
