//! Heine's transformation, checked by truncated expansion:
//!
//! ```text
//! sum_i (a)_i (b)_i / ((q)_i (c)_i) z^i
//!   = (c/b)_inf (bz)_inf / ((c)_inf (z)_inf)
//!     * sum_j (abz/c)_j (b)_j (c/b)^j / ((q)_j (bz)_j)
//! ```
//!
//! Every parameter is a monomial `alpha q^e` with rational `alpha` and
//! `e >= 0`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::report::{IdentityReport, ReportParams};
use crate::error::{Error, Result};
use crate::ring::{CoeffRing, Rational};
use crate::series::{poch_infinite, TruncatedSeries};

/// `coeff * q^exp`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QMonomial {
    pub coeff: Rational,
    pub exp: i64,
}

impl QMonomial {
    pub fn new(coeff: Rational, exp: i64) -> Self {
        QMonomial { coeff, exp }
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    fn times(&self, other: &QMonomial) -> QMonomial {
        QMonomial::new(self.coeff.times(&other.coeff), self.exp + other.exp)
    }

    fn over(&self, other: &QMonomial) -> Result<QMonomial> {
        Ok(QMonomial::new(
            self.coeff.times(&other.coeff.inverse()?),
            self.exp - other.exp,
        ))
    }
}

impl fmt::Display for QMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.coeff, self.exp)
    }
}

/// CLI syntax `p/q,e`.
impl FromStr for QMonomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (c, e) = s
            .split_once(',')
            .ok_or_else(|| Error::InvalidParameter(format!("expected `p/q,e`, got {s:?}")))?;
        let exp = e
            .parse::<i64>()
            .map_err(|_| Error::InvalidParameter(format!("bad q-exponent in {s:?}")))?;
        Ok(QMonomial::new(c.parse()?, exp))
    }
}

fn invalid(msg: String) -> Error {
    Error::InvalidParameter(msg)
}

/// Multiplies `s` by `1 - x q^i` (the `i`-th factor of `(x)_n`).
fn mul_factor(s: &mut TruncatedSeries<Rational>, x: &QMonomial, i: usize) -> Result<()> {
    if x.is_zero() {
        return Ok(());
    }
    let k = x.exp + i as i64;
    match k {
        k if k >= 1 => s.mul_one_minus(&x.coeff, k as usize),
        0 => *s = s.scale(&Rational::one().minus(&x.coeff)),
        _ => {
            return Err(invalid(format!(
                "Pochhammer factor 1 - {x} q^{i} is not a power series"
            )))
        }
    }
    Ok(())
}

/// Divides `s` by `1 - x q^i`.
fn div_factor(s: &mut TruncatedSeries<Rational>, x: &QMonomial, i: usize) -> Result<()> {
    if x.is_zero() {
        return Ok(());
    }
    let k = x.exp + i as i64;
    match k {
        k if k >= 1 => s.div_one_minus(&x.coeff, k as usize),
        0 => {
            let c = Rational::one().minus(&x.coeff);
            let inv = c
                .inverse()
                .map_err(|_| invalid(format!("(1 - {}) is not invertible", x.coeff)))?;
            *s = s.scale(&inv);
        }
        _ => {
            return Err(invalid(format!(
                "Pochhammer factor 1 - {x} q^{i} is not a power series"
            )))
        }
    }
    Ok(())
}

/// `(x; q)_inf` modulo `q^(N+1)`.
fn poch_inf(x: &QMonomial, order: usize) -> Result<TruncatedSeries<Rational>> {
    if x.is_zero() {
        return Ok(TruncatedSeries::one(order));
    }
    match x.exp {
        e if e >= 1 => poch_infinite(&x.coeff, e as usize, order),
        0 => {
            let mut s = poch_infinite(&x.coeff, 1, order)?;
            s = s.scale(&Rational::one().minus(&x.coeff));
            Ok(s)
        }
        _ => Err(invalid(format!("({x})_inf has a negative q-power"))),
    }
}

/// Number of summands needed when each step contributes `ratio`.
fn terms_needed(ratio: &QMonomial, order: usize, what: &str) -> Result<usize> {
    if ratio.is_zero() {
        return Ok(0);
    }
    if ratio.exp < 1 {
        return Err(invalid(format!(
            "{what} = {ratio} needs a positive q-power for the sum to converge formally"
        )));
    }
    Ok(order / ratio.exp as usize)
}

/// Both sides of the transformation modulo `q^(N+1)`.
pub fn heine_sides(
    a: &QMonomial,
    b: &QMonomial,
    c: &QMonomial,
    z: &QMonomial,
    order: usize,
) -> Result<(TruncatedSeries<Rational>, TruncatedSeries<Rational>)> {
    for (name, x) in [("a", a), ("b", b), ("c", c), ("z", z)] {
        if x.exp < 0 {
            return Err(invalid(format!("{name} = {x} has a negative q-power")));
        }
    }
    if b.is_zero() || c.is_zero() {
        return Err(invalid("b and c must be nonzero".into()));
    }
    let q = QMonomial::new(Rational::one(), 1);
    let c_over_b = c.over(b)?;
    let bz = b.times(z);
    let abz_over_c = a.times(&bz).over(c)?;

    let mut lhs = TruncatedSeries::zero(order);
    let mut term = TruncatedSeries::one(order);
    for i in 0..=terms_needed(z, order, "z")? {
        lhs = lhs.add(&term)?;
        mul_factor(&mut term, a, i)?;
        mul_factor(&mut term, b, i)?;
        div_factor(&mut term, &q, i)?;
        div_factor(&mut term, c, i)?;
        term = term.scale(&z.coeff).shift(z.exp as usize);
    }

    let mut sum = TruncatedSeries::zero(order);
    let mut term = TruncatedSeries::one(order);
    for j in 0..=terms_needed(&c_over_b, order, "c/b")? {
        sum = sum.add(&term)?;
        mul_factor(&mut term, &abz_over_c, j)?;
        mul_factor(&mut term, b, j)?;
        div_factor(&mut term, &q, j)?;
        div_factor(&mut term, &bz, j)?;
        term = term.scale(&c_over_b.coeff).shift(c_over_b.exp as usize);
    }
    let unit = |s: TruncatedSeries<Rational>, what: &str| {
        s.reciprocal()
            .map_err(|_| invalid(format!("({what})_inf has a non-invertible constant term")))
    };
    let prefactor = poch_inf(&c_over_b, order)?
        .mul(&poch_inf(&bz, order)?)?
        .mul(&unit(poch_inf(c, order)?, "c")?)?
        .mul(&unit(poch_inf(z, order)?, "z")?)?;
    let rhs = prefactor.mul(&sum)?;
    Ok((lhs, rhs))
}

/// Coefficientwise comparison of both sides, one row per power `q^0..q^N`.
pub fn heine_check(
    a: &QMonomial,
    b: &QMonomial,
    c: &QMonomial,
    z: &QMonomial,
    order: usize,
) -> Result<IdentityReport<Rational>> {
    let (lhs, rhs) = heine_sides(a, b, c, z, order)?;
    let mut params = ReportParams::new(order);
    for (name, x) in [("a", a), ("b", b), ("c", c), ("z", z)] {
        params.extra.insert(name.into(), x.to_string());
    }
    let rows = lhs
        .into_coeffs()
        .into_iter()
        .zip(rhs.into_coeffs())
        .enumerate()
        .map(|(n, (l, r))| (n, l, r));
    Ok(IdentityReport::from_rows("heine", params, rows))
}

/// The specialisation used for the divisor identity: `a = t q`, `b = q^n`,
/// `c = t q^(n+1)`, `z = q`.
pub fn heine_proof_instance(t: &Rational, n: i64) -> [QMonomial; 4] {
    [
        QMonomial::new(t.clone(), 1),
        QMonomial::new(Rational::one(), n),
        QMonomial::new(t.clone(), n + 1),
        QMonomial::new(Rational::one(), 1),
    ]
}
