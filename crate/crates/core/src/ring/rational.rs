use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{CoeffRing, Mode};
use crate::error::{Error, Result};

/// Arbitrary-precision rational, always stored reduced with a positive
/// denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `num / den`. Panics if `den` is zero.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        Rational(BigRational::new(num.into(), den.into()))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn checked_new(num: BigInt, den: BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::BadRational(format!("{num}/{den}")));
        }
        Ok(Rational(BigRational::new(num, den)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// The value as an `i64`, when it is an integer that fits.
    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.numer().to_i64()
        } else {
            None
        }
    }

    pub fn floor(&self) -> Self {
        Rational(self.0.floor())
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts `p` or `p/q` with optional leading minus; no decimals.
impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::BadRational(s.to_string());
        let int = |part: &str| -> Result<BigInt> {
            let digits = part.strip_prefix('-').unwrap_or(part);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            part.parse::<BigInt>().map_err(|_| bad())
        };
        match s.split_once('/') {
            None => Ok(Rational::from_integer(int(s)?)),
            Some((n, d)) => {
                let den = int(d)?;
                if den.is_zero() {
                    return Err(bad());
                }
                Ok(Rational(BigRational::new(int(n)?, den)))
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
struct RationalRepr {
    num: String,
    den: String,
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        RationalRepr {
            num: self.numer().to_string(),
            den: self.denom().to_string(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = RationalRepr::deserialize(deserializer)?;
        parse_parts(&repr.num, &repr.den).map_err(D::Error::custom)
    }
}

pub(super) fn parse_parts(num: &str, den: &str) -> Result<Rational> {
    let bad = || Error::BadRational(format!("{num}/{den}"));
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if !den.is_positive() {
        return Err(bad());
    }
    Ok(Rational(BigRational::new(num, den)))
}

impl CoeffRing for Rational {
    const MODE: Mode = Mode::Evaluated;

    fn zero() -> Self {
        Rational(BigRational::zero())
    }

    fn one() -> Self {
        Rational(BigRational::one())
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn plus(&self, rhs: &Self) -> Self {
        Rational(&self.0 + &rhs.0)
    }

    fn negate(&self) -> Self {
        Rational(-&self.0)
    }

    fn times(&self, rhs: &Self) -> Self {
        Rational(&self.0 * &rhs.0)
    }

    fn inverse(&self) -> Result<Self> {
        if self.0.is_zero() {
            Err(Error::NotAUnit(self.to_string()))
        } else {
            Ok(Rational(self.0.recip()))
        }
    }

    fn is_one(&self) -> bool {
        self.0.is_one()
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $ring:ident) => {
        impl $tr<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                CoeffRing::$ring(self, rhs)
            }
        }
        impl $tr for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                CoeffRing::$ring(&self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, plus);
forward_binop!(Sub, sub, minus);
forward_binop!(Mul, mul, times);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        self.negate()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_three_quarters() {
        assert_eq!(Rational::new(3, 4).inverse().unwrap(), Rational::new(4, 3));
        assert!(matches!(
            Rational::zero().inverse(),
            Err(Error::NotAUnit(_))
        ));
    }

    #[test]
    fn parses_cli_syntax() {
        assert_eq!("3".parse::<Rational>().unwrap(), Rational::from_integer(3));
        assert_eq!("-2/6".parse::<Rational>().unwrap(), Rational::new(-1, 3));
        assert_eq!(
            "4/-2".parse::<Rational>().unwrap(),
            Rational::from_integer(-2)
        );
        for bad in ["", "1.5", "1/0", "a", "1/", "/2", "+1", " 1"] {
            assert!(bad.parse::<Rational>().is_err(), "{bad:?} accepted");
        }
    }

    #[test]
    fn json_is_reduced_strings() {
        let r = Rational::new(6, -4);
        let js = serde_json::to_string(&r).unwrap();
        assert_eq!(js, r#"{"num":"-3","den":"2"}"#);
        let back: Rational = serde_json::from_str(r#"{"num":"10","den":"4"}"#).unwrap();
        assert_eq!(back, Rational::new(5, 2));
        assert!(serde_json::from_str::<Rational>(r#"{"num":"1","den":"0"}"#).is_err());
        assert!(serde_json::from_str::<Rational>(r#"{"num":"1","den":"-3"}"#).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(Rational::new(-1, 2).to_string(), "-1/2");
        assert_eq!(Rational::from_integer(7).to_string(), "7");
    }
}
