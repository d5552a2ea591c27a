//! Arbitrary-precision rational arithmetic in canonical form.
//!
//! Every value is kept fully reduced with a positive denominator, so equality
//! throughout the crate is plain structural equality and the text form `p/q`
//! is unambiguous. The denominator is always printed, including `/1`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::Pow;
use num::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Errors from rational construction and the partial operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RationalError {
    #[error("denominator must be nonzero")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero cannot be raised to a negative power")]
    ZeroToNegativePower,
    #[error("cannot parse {0:?} as a rational")]
    Parse(String),
}

/// An exact rational number in canonical form: fully reduced, denominator
/// positive, zero stored as `0/1`. The sign lives on the numerator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `numerator/denominator` in canonical form.
    pub fn new(
        numerator: impl Into<BigInt>,
        denominator: impl Into<BigInt>,
    ) -> Result<Self, RationalError> {
        let denominator = denominator.into();
        if denominator.is_zero() {
            return Err(RationalError::ZeroDenominator);
        }
        Ok(Self(BigRational::new(numerator.into(), denominator)))
    }

    /// The integer `n` as `n/1`.
    pub fn integer(n: impl Into<BigInt>) -> Self {
        Self(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Self(BigRational::zero())
    }

    pub fn one() -> Self {
        Self(BigRational::one())
    }

    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Self(self.0.abs())
    }

    /// Exact quotient, refusing a zero divisor.
    pub fn checked_div(&self, divisor: &Self) -> Result<Self, RationalError> {
        if divisor.is_zero() {
            return Err(RationalError::DivisionByZero);
        }
        Ok(Self(&self.0 / &divisor.0))
    }

    /// Exact integer power; a negative exponent inverts first.
    ///
    /// `0^k` for `k < 0` is an error; `0^0` is `1`.
    pub fn pow_int(&self, exponent: i64) -> Result<Self, RationalError> {
        if self.is_zero() && exponent < 0 {
            return Err(RationalError::ZeroToNegativePower);
        }
        let magnitude = exponent.unsigned_abs();
        let numerator = Pow::pow(self.0.numer(), magnitude);
        let denominator = Pow::pow(self.0.denom(), magnitude);
        if exponent >= 0 {
            Ok(Self(BigRational::new(numerator, denominator)))
        } else {
            Ok(Self(BigRational::new(denominator, numerator)))
        }
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Self::integer(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Self::integer(n)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = RationalError;

    /// Parses `p/q` or a bare integer `p`; the result is canonicalized.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let text = s.trim();
        let (p, q) = match text.split_once('/') {
            Some((p, q)) => (p, q),
            None => (text, "1"),
        };
        let parse_err = || RationalError::Parse(s.to_string());
        let numerator: BigInt = p.trim().parse().map_err(|_| parse_err())?;
        let denominator: BigInt = q.trim().parse().map_err(|_| parse_err())?;
        if denominator.is_zero() {
            return Err(RationalError::ZeroDenominator);
        }
        Self::new(numerator, denominator)
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_value_binops {
    ($Op:ident, $method:ident, $T:ty) => {
        impl $Op<$T> for &$T {
            type Output = $T;
            fn $method(self, rhs: $T) -> $T {
                self.$method(&rhs)
            }
        }
        impl $Op<&$T> for $T {
            type Output = $T;
            fn $method(self, rhs: &$T) -> $T {
                (&self).$method(rhs)
            }
        }
        impl $Op<$T> for $T {
            type Output = $T;
            fn $method(self, rhs: $T) -> $T {
                (&self).$method(&rhs)
            }
        }
    };
}
pub(crate) use forward_value_binops;

macro_rules! rational_binop {
    ($Op:ident, $method:ident) => {
        impl $Op<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        forward_value_binops!($Op, $method, Rational);
    };
}

rational_binop!(Add, add);
rational_binop!(Sub, sub);
rational_binop!(Mul, mul);

impl Div<&Rational> for &Rational {
    type Output = Rational;

    /// Panics on a zero divisor; use [`Rational::checked_div`] to recover.
    fn div(self, rhs: &Rational) -> Rational {
        self.checked_div(rhs).expect("division by zero")
    }
}
forward_value_binops!(Div, div, Rational);

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        -&self
    }
}

macro_rules! rational_assign {
    ($Op:ident, $method:ident, $binop:tt) => {
        impl $Op<&Rational> for Rational {
            fn $method(&mut self, rhs: &Rational) {
                *self = &*self $binop rhs;
            }
        }
        impl $Op<Rational> for Rational {
            fn $method(&mut self, rhs: Rational) {
                *self = &*self $binop &rhs;
            }
        }
    };
}

rational_assign!(AddAssign, add_assign, +);
rational_assign!(SubAssign, sub_assign, -);
rational_assign!(MulAssign, mul_assign, *);

/// Exact `m!`.
pub fn factorial(m: u32) -> BigInt {
    let mut product = BigInt::one();
    for i in 2..=m {
        product *= i;
    }
    product
}

/// Exact binomial coefficient `C(m, k)`, zero outside `0 <= k <= m`.
pub fn binomial(m: u32, k: i64) -> BigInt {
    if k < 0 || k > i64::from(m) {
        return BigInt::zero();
    }
    let k = (k as u32).min(m - k as u32);
    let mut product = BigInt::one();
    for i in 1..=k {
        // stays integral at each step: the partial product is C(m-k+i, i)
        product = product * (m - k + i) / i;
    }
    product
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(p: i64, q: i64) -> Rational {
        Rational::new(p, q).unwrap()
    }

    #[test]
    fn construction_canonicalizes_sign_and_gcd() {
        assert_eq!(rat(2, -4), rat(-1, 2));
        assert_eq!(rat(2, -4).to_string(), "-1/2");
        assert_eq!(rat(0, 7).to_string(), "0/1");
        assert_eq!(
            rat(-36740617, -2241727488000).to_string(),
            "36740617/2241727488000"
        );
    }

    #[test]
    fn zero_denominator_is_rejected() {
        assert_eq!(Rational::new(1, 0), Err(RationalError::ZeroDenominator));
    }

    #[test]
    fn field_operations_are_exact() {
        assert_eq!(rat(1, 6) + rat(-1, 6), Rational::zero());
        assert_eq!(rat(11, 360) * rat(4, 1), rat(11, 90));
        assert_eq!(rat(1, 6) / rat(2, 1), rat(1, 12));
    }

    #[test]
    fn checked_div_rejects_zero() {
        assert_eq!(
            rat(1, 6).checked_div(&Rational::zero()),
            Err(RationalError::DivisionByZero)
        );
    }

    #[test]
    fn integer_powers() {
        assert_eq!(rat(2, 1).pow_int(3).unwrap(), rat(8, 1));
        assert_eq!(rat(-1, 1).pow_int(4).unwrap(), rat(1, 1));
        assert_eq!(rat(1, 2).pow_int(-2).unwrap(), rat(4, 1));
        assert_eq!(Rational::zero().pow_int(0).unwrap(), Rational::one());
        assert_eq!(
            Rational::zero().pow_int(-1),
            Err(RationalError::ZeroToNegativePower)
        );
    }

    #[test]
    fn factorial_values() {
        assert_eq!(factorial(0), BigInt::one());
        assert_eq!(factorial(5), BigInt::from(120));
        // iterative product oracle for the largest value the tables need
        let oracle = (1..=14).fold(BigInt::one(), |acc, i| acc * i);
        assert_eq!(factorial(14), oracle);
        assert_eq!(factorial(14), BigInt::from(87_178_291_200_i64));
    }

    #[test]
    fn binomial_values_and_range() {
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(7, 0), BigInt::one());
        assert_eq!(binomial(10, 11), BigInt::zero());
        assert_eq!(binomial(10, -1), BigInt::zero());
        assert_eq!(binomial(10, 7), BigInt::from(120));
    }

    #[test]
    fn parsing_accepts_fractions_and_integers() {
        assert_eq!("-1/6".parse::<Rational>().unwrap(), rat(-1, 6));
        assert_eq!("3".parse::<Rational>().unwrap(), rat(3, 1));
        assert_eq!("2/-4".parse::<Rational>().unwrap(), rat(-1, 2));
        assert!("".parse::<Rational>().is_err());
        assert!("one/two".parse::<Rational>().is_err());
        assert_eq!(
            "1/0".parse::<Rational>(),
            Err(RationalError::ZeroDenominator)
        );
    }

    #[test]
    fn display_roundtrips_through_parse() {
        for (p, q) in [(0, 1), (-1, 6), (92427157, 1307674368000)] {
            let value = rat(p, q);
            assert_eq!(value.to_string().parse::<Rational>().unwrap(), value);
        }
    }
}
