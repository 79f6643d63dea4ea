//! Truncated formal power series in `q`.
//!
//! A [`TruncatedSeries`] of order `N` holds the coefficients of
//! `q^0 ..= q^N`; every operation is exact modulo `q^(N+1)`. Binary
//! operations insist on equal orders rather than silently promoting.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};
use crate::ring::CoeffRing;

#[derive(Clone, PartialEq, Serialize)]
pub struct TruncatedSeries<R> {
    order: usize,
    coeffs: Vec<R>,
}

impl<R: CoeffRing> TruncatedSeries<R> {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            order,
            coeffs: vec![R::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(R::one(), order)
    }

    pub fn constant(c: R, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// `c * q^d`, or zero when `d > order`.
    pub fn monomial(c: R, d: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if d <= order {
            s.coeffs[d] = c;
        }
        s
    }

    /// Builds a series from its leading coefficients, padding with zeros and
    /// dropping anything past `order`.
    pub fn from_coeffs(mut coeffs: Vec<R>, order: usize) -> Self {
        coeffs.resize(order + 1, R::zero());
        TruncatedSeries { order, coeffs }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    /// Coefficient of `q^m`.
    pub fn coeff(&self, m: usize) -> &R {
        &self.coeffs[m]
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order != other.order {
            return Err(Error::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.plus(b))
            .collect();
        Ok(TruncatedSeries {
            order: self.order,
            coeffs,
        })
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(R::negate).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Cauchy product truncated at `q^N`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let n = self.order;
        let mut coeffs = vec![R::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] = coeffs[i + j].plus(&a.times(b));
                }
            }
        }
        Ok(TruncatedSeries { order: n, coeffs })
    }

    pub fn scale(&self, c: &R) -> Self {
        TruncatedSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(|x| x.times(c)).collect(),
        }
    }

    /// Multiplicative inverse modulo `q^(N+1)`; needs a unit constant term.
    ///
    /// `y[0] = 1/x[0]`, `y[m] = -(1/x[0]) * sum_{i=1..m} x[i] y[m-i]`.
    pub fn reciprocal(&self) -> Result<Self> {
        let lead_inv = self.coeffs[0].inverse()?;
        let neg_lead_inv = lead_inv.negate();
        let mut y: Vec<R> = Vec::with_capacity(self.order + 1);
        y.push(lead_inv);
        for m in 1..=self.order {
            let mut acc = R::zero();
            for i in 1..=m {
                let x = &self.coeffs[i];
                if !x.is_zero() {
                    acc = acc.plus(&x.times(&y[m - i]));
                }
            }
            y.push(neg_lead_inv.times(&acc));
        }
        Ok(TruncatedSeries {
            order: self.order,
            coeffs: y,
        })
    }

    /// Multiplication by `q^d`.
    pub fn shift(&self, d: usize) -> Self {
        let mut s = Self::zero(self.order);
        for m in d..=self.order {
            s.coeffs[m] = self.coeffs[m - d].clone();
        }
        s
    }

    /// In-place multiplication by the binomial `1 - c q^k`, `k >= 1`.
    pub fn mul_one_minus(&mut self, c: &R, k: usize) {
        debug_assert!(k >= 1);
        if k > self.order || c.is_zero() {
            return;
        }
        for m in (k..=self.order).rev() {
            let prev = &self.coeffs[m - k];
            if !prev.is_zero() {
                let delta = c.times(prev);
                self.coeffs[m] = self.coeffs[m].minus(&delta);
            }
        }
    }

    /// In-place division by the binomial `1 - c q^k`, `k >= 1`, i.e.
    /// multiplication by the geometric series `sum_j c^j q^(jk)`.
    pub fn div_one_minus(&mut self, c: &R, k: usize) {
        debug_assert!(k >= 1);
        if k > self.order || c.is_zero() {
            return;
        }
        for m in k..=self.order {
            let prev = &self.coeffs[m - k];
            if !prev.is_zero() {
                let delta = c.times(prev);
                self.coeffs[m] = self.coeffs[m].plus(&delta);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(R::is_zero)
    }
}

/// `prod_{i=0..n-1} (1 - c q^(m+i))` modulo `q^(N+1)`; `n = 0` gives `1`.
pub fn poch_finite<R: CoeffRing>(c: &R, m: usize, n: usize, order: usize) -> TruncatedSeries<R> {
    let mut s = TruncatedSeries::one(order);
    for i in 0..n {
        if m + i > order {
            break;
        }
        s.mul_one_minus(c, m + i);
    }
    s
}

/// `prod_{i>=0} (1 - c q^(m+i))` modulo `q^(N+1)`; factors past `q^N` are 1.
pub fn poch_infinite<R: CoeffRing>(c: &R, m: usize, order: usize) -> Result<TruncatedSeries<R>> {
    if m == 0 {
        return Err(Error::InvalidParameter(
            "infinite Pochhammer product needs offset m >= 1".into(),
        ));
    }
    Ok(poch_finite(c, m, (order + 1).saturating_sub(m), order))
}

impl<R: CoeffRing> fmt::Display for TruncatedSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (m, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                f.write_str(" + ")?;
            }
            match m {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*q")?,
                _ => write!(f, "({c})*q^{m}")?,
            }
            wrote = true;
        }
        if wrote {
            f.write_str(" + ")?;
        }
        write!(f, "O(q^{})", self.order + 1)
    }
}

impl<R: CoeffRing> fmt::Debug for TruncatedSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Deserialize)]
struct SeriesRepr<R> {
    order: usize,
    coeffs: Vec<R>,
}

impl<'de, R: CoeffRing> Deserialize<'de> for TruncatedSeries<R> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = SeriesRepr::<R>::deserialize(deserializer)?;
        if repr.coeffs.len() != repr.order + 1 {
            return Err(D::Error::custom(format!(
                "series of order {} needs {} coefficients, got {}",
                repr.order,
                repr.order + 1,
                repr.coeffs.len()
            )));
        }
        Ok(TruncatedSeries {
            order: repr.order,
            coeffs: repr.coeffs,
        })
    }
}
