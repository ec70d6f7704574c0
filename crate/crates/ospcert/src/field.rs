//! Exact scalar arithmetic: the rationals and the quadratic extension Q(sqrt 2).
//!
//! Everything downstream (oscillator words, structure constants, sector matrices)
//! is generic over [`Scalar`]. `Rational` carries the B(0,n) pipeline; `Quad`
//! carries B(m,n) for m >= 1, where mixed fermion brackets produce sqrt(2)
//! coefficients. `promote` embeds the former into the latter; rank is preserved
//! under that embedding (tested, not assumed).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Arbitrary-precision rational, reduced with positive denominator
/// (both invariants maintained by `num-rational`).
pub type Rational = BigRational;

/// Field operations needed by the exact pipeline.
///
/// `Eq + Ord + Hash` keep map keys and canonical file output deterministic.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + Eq
    + Ord
    + std::hash::Hash
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_int(n: i64) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    /// Multiplicative inverse. Panics on zero (division by zero is a usage error).
    fn inv(&self) -> Self;
    /// Rough size measure used for pivot selection (bit length of the numerators).
    fn pivot_size(&self) -> u64;
    /// Serialized form: "p/q" for rationals, ["p/q","r/s"] for Q(sqrt2).
    fn to_json(&self) -> String;
    fn from_json(v: &serde_json::Value) -> Option<Self>;
}

fn parse_ratio(s: &str) -> Option<BigRational> {
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.parse::<BigInt>().ok()?, b.parse::<BigInt>().ok()?),
        None => (s.parse::<BigInt>().ok()?, BigInt::one()),
    };
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}

pub(crate) fn ratio_string(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

impl Scalar for Rational {
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        self.recip()
    }
    fn pivot_size(&self) -> u64 {
        self.numer().bits() + self.denom().bits()
    }
    fn to_json(&self) -> String {
        format!("\"{}\"", ratio_string(self))
    }
    fn from_json(v: &serde_json::Value) -> Option<Self> {
        parse_ratio(v.as_str()?)
    }
}

/// Element of Q(sqrt 2): `a + b*sqrt(2)`.
///
/// Zero iff a = 0 and b = 0 (sqrt 2 is irrational, no cross cancellation),
/// so equality and `is_zero` are exact.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Quad {
    pub a: Rational,
    pub b: Rational,
}

impl Quad {
    pub fn new(a: Rational, b: Rational) -> Self {
        Quad { a, b }
    }
    /// sqrt(2) itself.
    pub fn sqrt2() -> Self {
        Quad { a: Rational::zero(), b: Rational::one() }
    }
    /// Conjugate a - b*sqrt(2).
    pub fn conj(&self) -> Self {
        Quad { a: self.a.clone(), b: -self.b.clone() }
    }
    /// Field norm a^2 - 2 b^2; zero iff the element is zero.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - Rational::from_int(2) * &self.b * &self.b
    }
}

impl fmt::Debug for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", ratio_string(&self.a))
        } else if self.a.is_zero() {
            write!(f, "{}*sqrt2", ratio_string(&self.b))
        } else {
            write!(f, "{}+{}*sqrt2", ratio_string(&self.a), ratio_string(&self.b))
        }
    }
}

impl Zero for Quad {
    fn zero() -> Self {
        Quad { a: Rational::zero(), b: Rational::zero() }
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for Quad {
    fn one() -> Self {
        Quad { a: Rational::one(), b: Rational::zero() }
    }
}

impl Neg for Quad {
    type Output = Quad;
    fn neg(self) -> Quad {
        Quad { a: -self.a, b: -self.b }
    }
}

impl Add for Quad {
    type Output = Quad;
    fn add(self, rhs: Quad) -> Quad {
        Quad { a: self.a + rhs.a, b: self.b + rhs.b }
    }
}

impl Sub for Quad {
    type Output = Quad;
    fn sub(self, rhs: Quad) -> Quad {
        Quad { a: self.a - rhs.a, b: self.b - rhs.b }
    }
}

impl Mul for Quad {
    type Output = Quad;
    fn mul(self, rhs: Quad) -> Quad {
        // (a + b s)(c + d s) = (ac + 2bd) + (ad + bc) s, s^2 = 2
        let two = Rational::from_int(2);
        Quad {
            a: &self.a * &rhs.a + two * &self.b * &rhs.b,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
        }
    }
}

impl Div for Quad {
    type Output = Quad;
    fn div(self, rhs: Quad) -> Quad {
        self * rhs.inv()
    }
}

impl Scalar for Quad {
    fn from_int(n: i64) -> Self {
        Quad { a: Rational::from_int(n), b: Rational::zero() }
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Quad { a: Rational::from_ratio(num, den), b: Rational::zero() }
    }
    fn inv(&self) -> Self {
        let n = self.norm();
        assert!(!n.is_zero(), "inverse of zero");
        let c = self.conj();
        Quad { a: c.a / n.clone(), b: c.b / n }
    }
    fn pivot_size(&self) -> u64 {
        self.a.pivot_size() + self.b.pivot_size()
    }
    fn to_json(&self) -> String {
        format!("[\"{}\",\"{}\"]", ratio_string(&self.a), ratio_string(&self.b))
    }
    fn from_json(v: &serde_json::Value) -> Option<Self> {
        let arr = v.as_array()?;
        if arr.len() != 2 {
            return None;
        }
        Some(Quad { a: parse_ratio(arr[0].as_str()?)?, b: parse_ratio(arr[1].as_str()?)? })
    }
}

/// Ring embedding Q -> Q(sqrt 2). Injective; rank of any matrix is unchanged
/// under entrywise promotion (scalar extension of fields).
pub fn promote(x: &Rational) -> Quad {
    Quad { a: x.clone(), b: Rational::zero() }
}

/// Sign comparison helper used in a few displays; rationals are signed.
pub fn is_negative(x: &Rational) -> bool {
    x.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }
    fn qq(a: (i64, i64), b: (i64, i64)) -> Quad {
        Quad::new(q(a.0, a.1), q(b.0, b.1))
    }

    #[test]
    fn rational_add() {
        assert_eq!(q(1, 2) + q(1, 3), q(5, 6));
        assert_eq!(q(0, 1) + q(7, 3), q(7, 3));
    }

    #[test]
    fn rational_mul_inv() {
        assert_eq!(q(2, 3) * q(3, 2), q(1, 1));
        assert_eq!(Scalar::inv(&q(1, 4)), q(4, 1));
    }

    #[test]
    #[should_panic(expected = "inverse of zero")]
    fn rational_inv_zero_panics() {
        let _ = Scalar::inv(&Rational::zero());
    }

    #[test]
    fn quad_conjugate_cancellation() {
        // (1 + sqrt2) + (1 - sqrt2) = 2
        let x = qq((1, 1), (1, 1)) + qq((1, 1), (-1, 1));
        assert_eq!(x, Quad::from_int(2));
    }

    #[test]
    fn quad_sqrt2_squares_to_two() {
        assert_eq!(Quad::sqrt2() * Quad::sqrt2(), Quad::from_int(2));
    }

    #[test]
    fn quad_norm_form() {
        // (1 + sqrt2)(1 - sqrt2) = -1
        let x = qq((1, 1), (1, 1)) * qq((1, 1), (-1, 1));
        assert_eq!(x, Quad::from_int(-1));
    }

    #[test]
    fn quad_inverse_via_conjugate() {
        // inv(1 + sqrt2) = -1 + sqrt2 (norm is -1)
        assert_eq!(Scalar::inv(&qq((1, 1), (1, 1))), qq((-1, 1), (1, 1)));
        let x = qq((3, 2), (-5, 7));
        assert_eq!(x.clone() * Scalar::inv(&x), Quad::one());
    }

    #[test]
    #[should_panic(expected = "inverse of zero")]
    fn quad_inv_zero_panics() {
        let _ = Scalar::inv(&Quad::zero());
    }

    #[test]
    fn promote_is_ring_hom() {
        let x = q(3, 2);
        let y = q(-5, 7);
        assert_eq!(promote(&(x.clone() + y.clone())), promote(&x) + promote(&y));
        assert_eq!(promote(&(x.clone() * y.clone())), promote(&x) * promote(&y));
        assert_eq!(promote(&q(0, 1)), Quad::zero());
        assert_eq!(promote(&q(-5, 1)), Quad::from_int(-5));
    }

    #[test]
    fn json_round_trip() {
        let x = q(-22, 7);
        let v: serde_json::Value = serde_json::from_str(&x.to_json()).unwrap();
        assert_eq!(Rational::from_json(&v).unwrap(), x);
        let y = qq((3, 4), (-1, 2));
        let v: serde_json::Value = serde_json::from_str(&y.to_json()).unwrap();
        assert_eq!(Quad::from_json(&v).unwrap(), y);
    }
}
