//! Series sides of the `(t, u)` identities.
//!
//! With `c = (1-u) t`, the three generating functions are
//!
//! ```text
//! L1 = sum_{n>=1} a_n t u q^n (c q^(n+1))_inf / (t q^n)_inf
//! L2 = sum_{n>=1} a_n t u q^n (c q)_(n-1) / (t q)_n
//! L3 = sum_{n>=1} sum_{i>=0} a_n t u q^(n+i) (c q^(i+1))_(n-1) / (t q^(i+1))_n
//! ```
//!
//! Consecutive summands differ by one Pochhammer factor top and bottom, so
//! the fast builders walk `n` upward, multiplying by `(1 - x q^k)` and
//! dividing by `(1 - y q^k)` in place. The `*_direct` builders expand each
//! summand from scratch with [`poch_finite`], [`poch_infinite`] and a full
//! series reciprocal; they exist as an independent cross-check.

use crate::arith::SeqValues;
use crate::error::{Error, Result};
use crate::ring::CoeffRing;
use crate::series::{poch_finite, poch_infinite, TruncatedSeries};

fn require_terms(a: &SeqValues, order: usize) -> Result<()> {
    if a.len() < order {
        return Err(Error::SequenceTooShort {
            needed: order,
            got: a.len(),
        });
    }
    Ok(())
}

/// `(1 - u) t`.
fn shifted_param<R: CoeffRing>(t: &R, u: &R) -> R {
    R::one().minus(u).times(t)
}

/// Adds `coef * q^shift * body` into `acc`; `body` only needs to reach
/// order `acc.len() - 1 - shift`.
fn accumulate<R: CoeffRing>(acc: &mut [R], body: &TruncatedSeries<R>, coef: &R, shift: usize) {
    if coef.is_zero() {
        return;
    }
    for (m, slot) in acc.iter_mut().enumerate().skip(shift) {
        let b = body.coeff(m - shift);
        if !b.is_zero() {
            *slot = slot.plus(&coef.times(b));
        }
    }
}

/// Series side of the smallest-part identity, modulo `q^(N+1)`.
pub fn lhs_theorem1_series<R: CoeffRing>(
    a: &SeqValues,
    t: &R,
    u: &R,
    order: usize,
) -> Result<TruncatedSeries<R>> {
    require_terms(a, order)?;
    let c = shifted_param(t, u);
    let tu = t.times(u);
    let mut acc = vec![R::zero(); order + 1];
    // body_n = (c q^(n+1))_inf / (t q^n)_inf, starting at n = 1.
    let mut body = TruncatedSeries::one(order);
    for k in 2..=order {
        body.mul_one_minus(&c, k);
    }
    for k in 1..=order {
        body.div_one_minus(t, k);
    }
    for n in 1..=order {
        accumulate(&mut acc, &body, &tu.scale(a.get(n)), n);
        body.mul_one_minus(t, n);
        body.div_one_minus(&c, n + 1);
    }
    Ok(TruncatedSeries::from_coeffs(acc, order))
}

/// Series side of the largest-part identity, modulo `q^(N+1)`.
pub fn lhs_theorem2_series<R: CoeffRing>(
    a: &SeqValues,
    t: &R,
    u: &R,
    order: usize,
) -> Result<TruncatedSeries<R>> {
    require_terms(a, order)?;
    let c = shifted_param(t, u);
    let tu = t.times(u);
    let mut acc = vec![R::zero(); order + 1];
    // body_n = (c q)_(n-1) / (t q)_n.
    let mut body = TruncatedSeries::one(order);
    body.div_one_minus(t, 1);
    for n in 1..=order {
        accumulate(&mut acc, &body, &tu.scale(a.get(n)), n);
        body.mul_one_minus(&c, n);
        body.div_one_minus(t, n + 1);
    }
    Ok(TruncatedSeries::from_coeffs(acc, order))
}

/// Series side of the window identity (double sum over `n >= 1`, `i >= 0`),
/// modulo `q^(N+1)`. Only pairs with `n + i <= N` contribute.
pub fn lhs_theorem3_series<R: CoeffRing>(
    a: &SeqValues,
    t: &R,
    u: &R,
    order: usize,
) -> Result<TruncatedSeries<R>> {
    require_terms(a, order)?;
    let c = shifted_param(t, u);
    let tu = t.times(u);
    let mut acc = vec![R::zero(); order + 1];
    for i in 0..order {
        // body_(n,i) = (c q^(i+1))_(n-1) / (t q^(i+1))_n; only the first
        // N - n - i coefficients of it survive the q^(n+i) shift.
        let mut body = TruncatedSeries::one(order - i - 1);
        body.div_one_minus(t, i + 1);
        for n in 1..=order - i {
            accumulate(&mut acc, &body, &tu.scale(a.get(n)), n + i);
            body.mul_one_minus(&c, i + n);
            body.div_one_minus(t, i + n + 1);
        }
    }
    Ok(TruncatedSeries::from_coeffs(acc, order))
}

/// Term-by-term expansion of [`lhs_theorem1_series`].
pub fn lhs_theorem1_series_direct<R: CoeffRing>(
    a: &SeqValues,
    t: &R,
    u: &R,
    order: usize,
) -> Result<TruncatedSeries<R>> {
    require_terms(a, order)?;
    let c = shifted_param(t, u);
    let tu = t.times(u);
    let mut total = TruncatedSeries::zero(order);
    for n in 1..=order {
        let num = poch_infinite(&c, n + 1, order)?;
        let den = poch_infinite(t, n, order)?.reciprocal()?;
        let term = num.mul(&den)?.shift(n).scale(&tu.scale(a.get(n)));
        total = total.add(&term)?;
    }
    Ok(total)
}

/// Term-by-term expansion of [`lhs_theorem2_series`].
pub fn lhs_theorem2_series_direct<R: CoeffRing>(
    a: &SeqValues,
    t: &R,
    u: &R,
    order: usize,
) -> Result<TruncatedSeries<R>> {
    require_terms(a, order)?;
    let c = shifted_param(t, u);
    let tu = t.times(u);
    let mut total = TruncatedSeries::zero(order);
    for n in 1..=order {
        let num = poch_finite(&c, 1, n - 1, order);
        let den = poch_finite(t, 1, n, order).reciprocal()?;
        let term = num.mul(&den)?.shift(n).scale(&tu.scale(a.get(n)));
        total = total.add(&term)?;
    }
    Ok(total)
}

/// Term-by-term expansion of [`lhs_theorem3_series`].
pub fn lhs_theorem3_series_direct<R: CoeffRing>(
    a: &SeqValues,
    t: &R,
    u: &R,
    order: usize,
) -> Result<TruncatedSeries<R>> {
    require_terms(a, order)?;
    let c = shifted_param(t, u);
    let tu = t.times(u);
    let mut total = TruncatedSeries::zero(order);
    for n in 1..=order {
        for i in 0..=order - n {
            let num = poch_finite(&c, i + 1, n - 1, order);
            let den = poch_finite(t, i + 1, n, order).reciprocal()?;
            let term = num.mul(&den)?.shift(n + i).scale(&tu.scale(a.get(n)));
            total = total.add(&term)?;
        }
    }
    Ok(total)
}
