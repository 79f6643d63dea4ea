use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::parse_parts;
use super::{CoeffRing, Mode, Rational};
use crate::error::{Error, Result};

/// Laurent polynomial in `t`, ordinary polynomial in `u`, with exact
/// rational coefficients.
///
/// Terms are keyed by `(e_t, e_u)`; the map never stores a zero
/// coefficient, so structural equality is polynomial equality. Iteration
/// order is the canonical lexicographic order on `(e_t, e_u)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PolyTU {
    terms: BTreeMap<(i64, u32), Rational>,
}

impl PolyTU {
    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: Rational, e_t: i64, e_u: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((e_t, e_u), c);
        }
        PolyTU { terms }
    }

    /// The indeterminate `t`.
    pub fn t() -> Self {
        Self::monomial(Rational::one(), 1, 0)
    }

    /// The indeterminate `u`.
    pub fn u() -> Self {
        Self::monomial(Rational::one(), 0, 1)
    }

    /// Collects `(e_t, e_u, coeff)` triples, merging repeated exponents.
    pub fn from_terms(items: impl IntoIterator<Item = (i64, u32, Rational)>) -> Self {
        let mut p = PolyTU::default();
        for (et, eu, c) in items {
            p.add_term((et, eu), c);
        }
        p
    }

    fn add_term(&mut self, key: (i64, u32), c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().plus(&c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, u32, &Rational)> + '_ {
        self.terms.iter().map(|(&(et, eu), c)| (et, eu, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e_t: i64, e_u: u32) -> Rational {
        self.terms.get(&(e_t, e_u)).cloned().unwrap_or_default()
    }

    /// Returns the constant, if the polynomial has no `t` or `u` dependence.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    /// Substitutes rational values for `t` and `u`.
    pub fn eval(&self, t: &Rational, u: &Rational) -> Result<Rational> {
        let t_inv = if t.is_zero() {
            None
        } else {
            Some(t.inverse()?)
        };
        let mut acc = Rational::zero();
        for (&(et, eu), c) in &self.terms {
            let t_part = if et >= 0 {
                t.pow(et as u32)
            } else {
                t_inv
                    .as_ref()
                    .ok_or(Error::EvalAtZero)?
                    .pow(et.unsigned_abs() as u32)
            };
            acc = acc.plus(&c.times(&t_part).times(&u.pow(eu)));
        }
        Ok(acc)
    }
}

impl CoeffRing for PolyTU {
    const MODE: Mode = Mode::Symbolic;

    fn zero() -> Self {
        PolyTU::default()
    }

    fn one() -> Self {
        PolyTU::constant(Rational::one())
    }

    fn from_rational(r: &Rational) -> Self {
        PolyTU::constant(r.clone())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn plus(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (&key, c) in &rhs.terms {
            out.add_term(key, c.clone());
        }
        out
    }

    fn negate(&self) -> Self {
        PolyTU {
            terms: self.terms.iter().map(|(&k, c)| (k, c.negate())).collect(),
        }
    }

    fn times(&self, rhs: &Self) -> Self {
        let mut out = PolyTU::default();
        for (&(at, au), ac) in &self.terms {
            for (&(bt, bu), bc) in &rhs.terms {
                out.add_term((at + bt, au + bu), ac.times(bc));
            }
        }
        out
    }

    /// Units are nonzero monomials `c * t^a` (no `u`).
    fn inverse(&self) -> Result<Self> {
        match self.terms.iter().next() {
            Some((&(et, 0), c)) if self.terms.len() == 1 => {
                Ok(PolyTU::monomial(c.inverse()?, -et, 0))
            }
            _ => Err(Error::NotAUnit(self.to_string())),
        }
    }

    fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return PolyTU::default();
        }
        PolyTU {
            terms: self.terms.iter().map(|(&k, c)| (k, c.times(r))).collect(),
        }
    }
}

impl From<Rational> for PolyTU {
    fn from(r: Rational) -> Self {
        PolyTU::constant(r)
    }
}

impl fmt::Display for PolyTU {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // Highest powers first reads more naturally.
        for (i, (&(et, eu), c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            let mut factors = Vec::new();
            if !mag.is_one() || (et == 0 && eu == 0) {
                factors.push(mag.to_string());
            }
            match et {
                0 => {}
                1 => factors.push("t".into()),
                e => factors.push(format!("t^{e}")),
            }
            match eu {
                0 => {}
                1 => factors.push("u".into()),
                e => factors.push(format!("u^{e}")),
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for PolyTU {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    et: i64,
    eu: u32,
    num: String,
    den: String,
}

impl Serialize for PolyTU {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.terms.iter().map(|(&(et, eu), c)| TermRepr {
            et,
            eu,
            num: c.numer().to_string(),
            den: c.denom().to_string(),
        }))
    }
}

impl<'de> Deserialize<'de> for PolyTU {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let reprs = Vec::<TermRepr>::deserialize(deserializer)?;
        let mut items = Vec::with_capacity(reprs.len());
        for r in reprs {
            let c = parse_parts(&r.num, &r.den).map_err(D::Error::custom)?;
            items.push((r.et, r.eu, c));
        }
        Ok(PolyTU::from_terms(items))
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $ring:ident) => {
        impl $tr<&PolyTU> for &PolyTU {
            type Output = PolyTU;
            fn $method(self, rhs: &PolyTU) -> PolyTU {
                CoeffRing::$ring(self, rhs)
            }
        }
        impl $tr for PolyTU {
            type Output = PolyTU;
            fn $method(self, rhs: PolyTU) -> PolyTU {
                CoeffRing::$ring(&self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, plus);
forward_binop!(Sub, sub, minus);
forward_binop!(Mul, mul, times);

impl Neg for PolyTU {
    type Output = PolyTU;
    fn neg(self) -> PolyTU {
        self.negate()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn one_minus_t_inv() -> PolyTU {
        PolyTU::from_terms([(0, 0, q(1, 1)), (-1, 0, q(-1, 1))])
    }

    #[test]
    fn monomial_product() {
        let tu = PolyTU::t() * PolyTU::u();
        assert_eq!(&tu * &tu, PolyTU::monomial(q(1, 1), 2, 2));
    }

    #[test]
    fn laurent_distributivity() {
        let t_minus_1 = PolyTU::t() - PolyTU::one();
        let t_inv = PolyTU::t().inverse().unwrap();
        assert_eq!(t_minus_1 * t_inv, one_minus_t_inv());
    }

    #[test]
    fn square_of_one_minus_t_inverse() {
        let p = one_minus_t_inv();
        let expected = PolyTU::from_terms([(0, 0, q(1, 1)), (-1, 0, q(-2, 1)), (-2, 0, q(1, 1))]);
        assert_eq!(&p * &p, expected);
    }

    #[test]
    fn evaluation() {
        let p = PolyTU::monomial(q(1, 1), 2, 1);
        assert_eq!(p.eval(&q(-1, 1), &q(2, 1)).unwrap(), q(2, 1));
        let r = one_minus_t_inv();
        assert_eq!(r.eval(&q(2, 1), &q(0, 1)).unwrap(), q(1, 2));
        assert_eq!(r.eval(&q(0, 1), &q(0, 1)), Err(Error::EvalAtZero));
        // Nonnegative t powers are fine at t = 0.
        assert_eq!(PolyTU::t().eval(&q(0, 1), &q(5, 1)).unwrap(), q(0, 1));
    }

    #[test]
    fn units() {
        let m = PolyTU::monomial(q(-2, 1), 3, 0);
        assert_eq!(m.inverse().unwrap(), PolyTU::monomial(q(-1, 2), -3, 0));
        assert!(matches!(
            (PolyTU::one() + PolyTU::t()).inverse(),
            Err(Error::NotAUnit(_))
        ));
        assert!(matches!(PolyTU::u().inverse(), Err(Error::NotAUnit(_))));
        assert!(matches!(PolyTU::zero().inverse(), Err(Error::NotAUnit(_))));
    }

    #[test]
    fn cancellation_drops_terms() {
        let p = PolyTU::t() - PolyTU::t();
        assert!(p.is_zero());
        assert_eq!(p.num_terms(), 0);
    }

    #[test]
    fn json_canonical_order() {
        let p = PolyTU::from_terms([(1, 0, q(1, 1)), (-1, 2, q(-3, 2)), (1, 1, q(2, 1))]);
        let js = serde_json::to_string(&p).unwrap();
        assert_eq!(
            js,
            r#"[{"et":-1,"eu":2,"num":"-3","den":"2"},{"et":1,"eu":0,"num":"1","den":"1"},{"et":1,"eu":1,"num":"2","den":"1"}]"#
        );
        let back: PolyTU = serde_json::from_str(&js).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn display() {
        let p = PolyTU::from_terms([(2, 1, q(1, 1)), (0, 0, q(-1, 2)), (-1, 0, q(3, 1))]);
        assert_eq!(p.to_string(), "t^2*u - 1/2 + 3*t^-1");
        assert_eq!(PolyTU::zero().to_string(), "0");
    }
}
