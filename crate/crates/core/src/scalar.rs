//! The exact scalar abstraction shared by polynomials, matrices and the ticket engine.

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision rational number, always in lowest terms with positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("elements belong to different field towers")]
    TowerMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero divisor encountered: a minimal polynomial is reducible")]
    ZeroDivisor,
    #[error("field towers deeper than two levels are not supported")]
    TowerDepthExceeded,
    #[error("invalid minimal polynomial: {0}")]
    InvalidMinPoly(String),
    #[error("no primitive {0}-th root of unity in this tower")]
    MissingRoot(u64),
}

/// Operations on references, so generic code can avoid cloning operands.
///
/// Implemented per scalar type rather than by a blanket impl: a blanket impl
/// sends trait selection through the polynomial operator impls and overflows.
pub trait RefOps<T>:
    Sized + Add<Self, Output = T> + Sub<Self, Output = T> + Mul<Self, Output = T> + Neg<Output = T>
{
}

impl<'a> RefOps<Rational> for &'a Rational {}

/// An exact field: equality is decidable and every nonzero element can be inverted
/// (or the attempt reports why it cannot).
pub trait Field:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
{
    fn try_inv(&self) -> Result<Self, FieldError>;

    fn from_rational(q: Rational) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    /// The value as a rational number, if it lies in the prime field.
    fn to_rational(&self) -> Option<Rational>;

    fn try_div(&self, other: &Self) -> Result<Self, FieldError> {
        Ok(self.clone() * other.try_inv()?)
    }

    /// Whether the two values can meet in one arithmetic operation.
    fn compatible(&self, _other: &Self) -> bool {
        true
    }
}

impl Field for Rational {
    fn try_inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            Err(FieldError::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }

    fn from_rational(q: Rational) -> Self {
        q
    }

    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
}

// Ratio's own operators normalize through a binary gcd whose cost grows with
// the bit length even against a denominator of 1; these skip it for integers.

pub(crate) fn add_q(a: &Rational, b: &Rational) -> Rational {
    if a.is_integer() && b.is_integer() {
        Rational::from_integer(a.numer() + b.numer())
    } else {
        a + b
    }
}

pub(crate) fn sub_q(a: &Rational, b: &Rational) -> Rational {
    if a.is_integer() && b.is_integer() {
        Rational::from_integer(a.numer() - b.numer())
    } else {
        a - b
    }
}

pub(crate) fn mul_q(a: &Rational, b: &Rational) -> Rational {
    if a.is_integer() && b.is_integer() {
        Rational::from_integer(a.numer() * b.numer())
    } else {
        a * b
    }
}

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses "a/b" or "a" into a normalized rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse::<BigInt>().ok()?, d.trim().parse::<BigInt>().ok()?),
        None => (s.parse::<BigInt>().ok()?, BigInt::one()),
    };
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Canonical text form: "a" for integers, "a/b" otherwise.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Exact square root of a rational, if it is a perfect square.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_normalize() {
        let q = rational(6, -4);
        assert_eq!(q.numer(), &BigInt::from(-3));
        assert_eq!(q.denom(), &BigInt::from(2));
        assert_eq!(format_rational(&q), "-3/2");
        assert_eq!(format_rational(&int(0)), "0");
    }

    #[test]
    fn parse_round_trip() {
        for s in ["0", "-7", "3/5", "-12/7"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(parse_rational("4/6").unwrap(), rational(2, 3));
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("x").is_none());
    }

    #[test]
    fn invert_rational() {
        assert_eq!(rational(5, 3).try_inv().unwrap(), rational(3, 5));
        assert_eq!(int(0).try_inv(), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn perfect_square_roots() {
        assert_eq!(rational_sqrt(&rational(9, 4)), Some(rational(3, 2)));
        assert_eq!(rational_sqrt(&int(2)), None);
        assert_eq!(rational_sqrt(&int(-4)), None);
    }
}
