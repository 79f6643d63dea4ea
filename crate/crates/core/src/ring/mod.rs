//! Exact coefficient rings.
//!
//! Every series and partition sum in this crate is generic over
//! [`CoeffRing`], so the same code runs in evaluated mode ([`Rational`]) and
//! in symbolic mode ([`PolyTU`], Laurent in `t`, polynomial in `u`).

mod poly;
mod rational;

use std::fmt::{Debug, Display};

use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::{Error, Result};

pub use poly::PolyTU;
pub use rational::Rational;

/// A commutative ring with exact equality and a partial inverse on units.
pub trait CoeffRing:
    Clone + PartialEq + Debug + Display + Send + Sync + Serialize + DeserializeOwned + 'static
{
    /// Evaluated for plain rationals, symbolic for polynomial coefficients.
    const MODE: Mode;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn is_zero(&self) -> bool;

    fn plus(&self, rhs: &Self) -> Self;
    fn negate(&self) -> Self;
    fn times(&self, rhs: &Self) -> Self;

    /// Multiplicative inverse, defined exactly on units.
    fn inverse(&self) -> Result<Self>;

    fn minus(&self, rhs: &Self) -> Self {
        self.plus(&rhs.negate())
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn from_int(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(n))
    }

    fn scale(&self, r: &Rational) -> Self {
        self.times(&Self::from_rational(r))
    }

    fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.times(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.times(&base);
            }
        }
        acc
    }

    /// Integer power; negative exponents go through [`CoeffRing::inverse`].
    fn powi(&self, exp: i64) -> Result<Self> {
        let magnitude = u32::try_from(exp.unsigned_abs())
            .map_err(|_| Error::InvalidParameter(format!("exponent {exp} out of range")))?;
        if exp >= 0 {
            Ok(self.pow(magnitude))
        } else {
            Ok(self.inverse()?.pow(magnitude))
        }
    }
}

/// Which coefficient ring a computation ran in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Symbolic,
    Evaluated,
}

impl Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::Symbolic => "symbolic",
            Mode::Evaluated => "evaluated",
        })
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "symbolic" => Ok(Mode::Symbolic),
            "evaluated" => Ok(Mode::Evaluated),
            other => Err(Error::InvalidParameter(format!("unknown mode {other:?}"))),
        }
    }
}

/// Sum of a sequence of ring elements.
pub fn ring_sum<'a, R: CoeffRing>(items: impl IntoIterator<Item = &'a R>) -> R {
    items.into_iter().fold(R::zero(), |acc, x| acc.plus(x))
}
