//! Divisor-side arithmetic: divisors, `sigma_k`, odd-divisor counts, the
//! Möbius function, the divisor-sum transform and its Möbius inverse, and
//! the divisor sides of the `t`-weighted identities.

use num_bigint::BigInt;
use num_traits::Pow;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::check_t;
use crate::ring::{CoeffRing, Rational};

/// A sequence `a_1, ..., a_N` of rationals, indexed from 1.
///
/// Index 0 is never stored; [`SeqValues::get`] returns 0 for it, which is
/// the `a_0 = 0` convention needed by the first-difference identities.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SeqValues {
    values: Vec<Rational>,
}

impl SeqValues {
    /// `values[0]` becomes `a_1`.
    pub fn new(values: Vec<Rational>) -> Self {
        SeqValues { values }
    }

    pub fn from_fn(len: usize, f: impl Fn(usize) -> Rational) -> Self {
        SeqValues::new((1..=len).map(f).collect())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `a_i`; panics when `i` exceeds the stored length.
    pub fn get(&self, i: usize) -> &Rational {
        static ZERO: std::sync::OnceLock<Rational> = std::sync::OnceLock::new();
        if i == 0 {
            return ZERO.get_or_init(Rational::zero);
        }
        &self.values[i - 1]
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// The first `len` terms.
    pub fn truncated(&self, len: usize) -> Result<SeqValues> {
        if len > self.len() {
            return Err(Error::SequenceTooShort {
                needed: len,
                got: self.len(),
            });
        }
        Ok(SeqValues::new(self.values[..len].to_vec()))
    }

    /// `i -> c^i a_i` for a ring element `c`.
    pub fn weighted_by_powers(&self, c: &Rational) -> SeqValues {
        let mut pw = Rational::one();
        let mut out = Vec::with_capacity(self.len());
        for v in &self.values {
            pw = pw.times(c);
            out.push(v.times(&pw));
        }
        SeqValues::new(out)
    }
}

/// Divisors of `n` in ascending order, by trial division up to `sqrt(n)`.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n >= 1, "divisors of 0 are undefined");
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// `sigma_k(n) = sum_{d | n} d^k`.
pub fn sigma(k: u32, n: u64) -> BigInt {
    divisors(n)
        .into_iter()
        .map(|d| Pow::pow(BigInt::from(d), k))
        .sum()
}

/// Number of odd divisors of `n`.
pub fn tau_odd(n: u64) -> u64 {
    divisors(n).into_iter().filter(|d| d % 2 == 1).count() as u64
}

/// Möbius function by trial-division factorisation.
pub fn mobius(n: u64) -> i8 {
    assert!(n >= 1, "mobius(0) is undefined");
    let mut m = n;
    let mut sign = 1i8;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

/// `b_n = sum_{d | n} a_d` for `n = 1..=len`.
pub fn divisor_transform(a: &SeqValues, len: usize) -> Result<SeqValues> {
    let a = a.truncated(len)?;
    Ok(SeqValues::from_fn(len, |n| {
        divisors(n as u64)
            .into_iter()
            .fold(Rational::zero(), |acc, d| acc.plus(a.get(d as usize)))
    }))
}

/// `a_n = sum_{d | n} mu(n/d) b_d` for `n = 1..=len`.
pub fn mobius_inverse(b: &SeqValues, len: usize) -> Result<SeqValues> {
    let b = b.truncated(len)?;
    Ok(SeqValues::from_fn(len, |n| {
        let n = n as u64;
        divisors(n)
            .into_iter()
            .fold(Rational::zero(), |acc, d| match mobius(n / d) {
                0 => acc,
                1 => acc.plus(b.get(d as usize)),
                _ => acc.minus(b.get(d as usize)),
            })
    }))
}

fn require_terms(a: &SeqValues, n: u64) -> Result<()> {
    if (a.len() as u64) < n {
        return Err(Error::SequenceTooShort {
            needed: n as usize,
            got: a.len(),
        });
    }
    Ok(())
}

/// `sum_{d | n} t^d (a_1/t + a_2/t^2 + ... + a_d/t^d)`.
pub fn rhs_theorem4<R: CoeffRing>(n: u64, a: &SeqValues, t: &R) -> Result<R> {
    require_terms(a, n)?;
    let t_inv = check_t(t)?;
    let mut acc = R::zero();
    for d in divisors(n) {
        let mut inner = R::zero();
        let mut t_neg = R::one();
        for i in 1..=d as usize {
            t_neg = t_neg.times(&t_inv);
            inner = inner.plus(&t_neg.scale(a.get(i)));
        }
        acc = acc.plus(&t.pow(d as u32).times(&inner));
    }
    Ok(acc)
}

/// `sum_{d | n} t^d (a_1 + ... + a_d)`.
pub fn rhs_corollary1<R: CoeffRing>(n: u64, a: &SeqValues, t: &R) -> Result<R> {
    require_terms(a, n)?;
    check_t(t)?;
    let mut acc = R::zero();
    for d in divisors(n) {
        let partial = (1..=d as usize).fold(Rational::zero(), |s, i| s.plus(a.get(i)));
        acc = acc.plus(&t.pow(d as u32).scale(&partial));
    }
    Ok(acc)
}

/// `(sigma_1(n) + tau_odd(n)) / 2`.
pub fn example1_closed_form(n: u64) -> Rational {
    Rational::new(sigma(1, n) + BigInt::from(tau_odd(n)), 2)
}

/// `(sigma_2(n) + sigma_1(n)) / 2`.
pub fn example2_closed_form(n: u64) -> Rational {
    Rational::new(sigma(2, n) + sigma(1, n), 2)
}

/// `tau_odd(n)` as a rational.
pub fn example3_closed_form(n: u64) -> Rational {
    Rational::from_integer(tau_odd(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    fn seq_fn(len: usize, f: impl Fn(i64) -> i64) -> SeqValues {
        SeqValues::from_fn(len, |i| r(f(i as i64)))
    }

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(7), vec![1, 7]);
        assert_eq!(divisors(36), vec![1, 2, 3, 4, 6, 9, 12, 18, 36]);
    }

    #[test]
    fn sigma_values() {
        assert_eq!(sigma(1, 6), BigInt::from(12));
        assert_eq!(sigma(2, 4), BigInt::from(21));
        assert_eq!(sigma(0, 1), BigInt::from(1));
        assert_eq!(sigma(0, 12), BigInt::from(6));
    }

    #[test]
    fn odd_divisors() {
        assert_eq!(tau_odd(9), 3);
        assert_eq!(tau_odd(8), 1);
        assert_eq!(tau_odd(1), 1);
    }

    #[test]
    fn mobius_values() {
        assert_eq!(mobius(1), 1);
        assert_eq!(mobius(12), 0);
        assert_eq!(mobius(30), -1);
        assert_eq!(mobius(2), -1);
        assert_eq!(mobius(6), 1);
        assert_eq!(mobius(49), 0);
    }

    #[test]
    fn transforms() {
        let delta = seq_fn(10, |i| (i == 1) as i64);
        assert_eq!(divisor_transform(&delta, 10).unwrap(), seq_fn(10, |_| 1));
        let id = seq_fn(10, |i| i);
        assert_eq!(*divisor_transform(&id, 10).unwrap().get(6), r(12));
        let ones = seq_fn(12, |_| 1);
        assert_eq!(*divisor_transform(&ones, 12).unwrap().get(12), r(6));
        assert_eq!(
            mobius_inverse(&ones, 12).unwrap(),
            seq_fn(12, |i| (i == 1) as i64)
        );
        let sig = SeqValues::from_fn(10, |n| Rational::from_integer(sigma(1, n as u64)));
        let back = mobius_inverse(&sig, 10).unwrap();
        assert_eq!(*back.get(6), r(6));
        assert_eq!(back, id);
        assert!(divisor_transform(&id, 11).is_err());
    }

    #[test]
    fn theorem4_divisor_side() {
        let id = seq_fn(5, |i| i);
        assert_eq!(rhs_theorem4(2, &id, &r(2)).unwrap(), r(5));
        assert_eq!(
            rhs_theorem4(1, &seq_fn(1, |_| 7), &Rational::new(-2, 3)).unwrap(),
            r(7)
        );
        assert_eq!(rhs_theorem4(3, &id, &r(-1)).unwrap(), r(3));
        assert!(matches!(
            rhs_theorem4(3, &id, &r(1)),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            rhs_theorem4(3, &id, &r(0)),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn corollary1_divisor_side() {
        assert_eq!(rhs_corollary1(1, &seq_fn(1, |_| 1), &r(2)).unwrap(), r(2));
        assert_eq!(rhs_corollary1(2, &seq_fn(2, |_| 1), &r(2)).unwrap(), r(10));
        let a = seq_fn(15, |i| i * i - 3);
        for t in [r(2), r(-1), Rational::new(3, 2)] {
            let shifted = a.weighted_by_powers(&t);
            for n in 1..=15 {
                assert_eq!(
                    rhs_corollary1(n, &a, &t).unwrap(),
                    rhs_theorem4(n, &shifted, &t).unwrap()
                );
            }
        }
    }

    #[test]
    fn closed_forms_small() {
        assert_eq!(example1_closed_form(2), r(2));
        assert_eq!(example1_closed_form(3), r(3));
        assert_eq!(example2_closed_form(2), r(4));
        assert_eq!(example3_closed_form(3), r(2));
    }

    #[test]
    fn seq_json() {
        let s = seq_fn(2, |i| i);
        assert_eq!(
            serde_json::to_string(&s).unwrap(),
            r#"{"values":[{"num":"1","den":"1"},{"num":"2","den":"1"}]}"#
        );
    }
}
