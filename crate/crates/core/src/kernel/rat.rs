//! Exact rationals.
//!
//! [`Rat`] is a thin newtype over `num_rational::BigRational`, which already
//! keeps values reduced with a positive denominator. The wrapper fixes the
//! textual form used everywhere in reports: `"p/q"`, or just `"p"` when the
//! value is an integer.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::KernelError;

/// An exact rational number, always reduced with a positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rat(BigRational);

impl Rat {
    /// Builds `num / den`; fails when `den == 0`.
    pub fn new(num: i64, den: i64) -> Result<Self, KernelError> {
        if den == 0 {
            return Err(KernelError::DivisionByZero);
        }
        Ok(Rat(BigRational::new(BigInt::from(num), BigInt::from(den))))
    }

    pub fn from_int(v: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_bigint(v: BigInt) -> Self {
        Rat(BigRational::from_integer(v))
    }

    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn abs(&self) -> Self {
        Rat(self.0.abs())
    }

    /// Multiplicative inverse; fails on zero.
    pub fn recip(&self) -> Result<Self, KernelError> {
        if self.is_zero() {
            return Err(KernelError::DivisionByZero);
        }
        Ok(Rat(self.0.recip()))
    }

    /// Exact division; fails on a zero divisor.
    pub fn checked_div(&self, other: &Rat) -> Result<Self, KernelError> {
        Ok(self * &other.recip()?)
    }

    /// Integer power (negative exponents allowed for nonzero values).
    pub fn pow(&self, exp: i32) -> Result<Self, KernelError> {
        if exp < 0 {
            return self.recip()?.pow(-exp);
        }
        let mut acc = Rat::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        Ok(acc)
    }

    /// The value as `i64` when it is an integer that fits.
    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }

    /// Smallest integer `>= self`.
    pub fn ceil(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    pub fn inner(&self) -> &BigRational {
        &self.0
    }
}

impl From<i64> for Rat {
    fn from(v: i64) -> Self {
        Rat::from_int(v)
    }
}

impl From<i32> for Rat {
    fn from(v: i32) -> Self {
        Rat::from_int(v as i64)
    }
}

impl From<BigRational> for Rat {
    fn from(v: BigRational) -> Self {
        Rat(v)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Rat {
    type Err = KernelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || KernelError::Parse(format!("not an exact rational: {s:?}"));
        let t = s.trim();
        let (num, den) = match t.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (t, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(KernelError::DivisionByZero);
        }
        Ok(Rat(BigRational::new(num, den)))
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat($trait::$method(&self.0, &rhs.0))
            }
        }
        impl $trait<Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat($trait::$method(self.0, rhs.0))
            }
        }
        impl $trait<&Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat($trait::$method(self.0, &rhs.0))
            }
        }
        impl $trait<Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat($trait::$method(&self.0, rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

/// Panics on a zero divisor, like the underlying big-rational type; library
/// code uses [`Rat::checked_div`] wherever the divisor is not known nonzero.
impl Div<&Rat> for &Rat {
    type Output = Rat;
    fn div(self, rhs: &Rat) -> Rat {
        Rat(&self.0 / &rhs.0)
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, rhs: &Rat) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, rhs: &Rat) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rat> for Rat {
    fn mul_assign(&mut self, rhs: &Rat) {
        self.0 *= &rhs.0;
    }
}

impl Sum for Rat {
    fn sum<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |a, b| a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_with_positive_denominator() {
        let r = Rat::new(4, -6).unwrap();
        assert_eq!(r.to_string(), "-2/3");
        assert_eq!(r.denom(), &BigInt::from(3));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(Rat::new(1, 0).is_err());
        assert!("1/0".parse::<Rat>().is_err());
    }

    #[test]
    fn parse_round_trip() {
        for s in ["0", "-7", "3/4", "-12/5"] {
            let r: Rat = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
        assert_eq!("6/4".parse::<Rat>().unwrap().to_string(), "3/2");
        assert!("x".parse::<Rat>().is_err());
    }

    #[test]
    fn serde_uses_strings() {
        let r = Rat::new(-1, 2).unwrap();
        let js = serde_json::to_string(&r).unwrap();
        assert_eq!(js, "\"-1/2\"");
        let back: Rat = serde_json::from_str(&js).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn recip_and_pow() {
        let r = Rat::new(2, 3).unwrap();
        assert_eq!((&r * &r.recip().unwrap()), Rat::one());
        assert_eq!(r.pow(-2).unwrap(), Rat::new(9, 4).unwrap());
        assert!(Rat::zero().recip().is_err());
    }
}
