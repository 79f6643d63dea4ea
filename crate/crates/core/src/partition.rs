//! Integer partitions as multiplicity vectors, their statistics, and the
//! partition-side weighted sums.
//!
//! A partition of `n` is stored as `mult[j-1] = k_j`, the number of times
//! part `j` occurs, trimmed after the largest part. The four statistics are
//! `k` (number of parts), `Q` (number of distinct parts), `s` (smallest
//! part) and `l` (largest part).
//!
//! The weighted sums only depend on a partition through `(k, Q, s, l)`, so
//! they first tally how many partitions of `n` share each statistics tuple
//! and then weight each tuple once.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::arith::SeqValues;
use crate::error::{Error, Result};
use crate::ring::{CoeffRing, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PartitionRepr")]
pub struct Partition {
    n: u32,
    mult: Vec<u32>,
}

#[derive(Deserialize)]
struct PartitionRepr {
    n: u32,
    mult: Vec<u32>,
}

impl TryFrom<PartitionRepr> for Partition {
    type Error = Error;

    fn try_from(r: PartitionRepr) -> Result<Self> {
        let p = Partition::from_mult(r.mult)?;
        if p.n != r.n {
            return Err(Error::InvalidParameter(format!(
                "multiplicities sum to {}, not {}",
                p.n, r.n
            )));
        }
        Ok(p)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PartitionStats {
    pub k: u32,
    #[serde(rename = "Q")]
    pub q: u32,
    pub s: u32,
    pub l: u32,
}

impl Partition {
    /// Validates and trims a multiplicity vector `[k_1, k_2, ...]`.
    pub fn from_mult(mut mult: Vec<u32>) -> Result<Self> {
        while mult.last() == Some(&0) {
            mult.pop();
        }
        if mult.is_empty() {
            return Err(Error::InvalidParameter("partition has no parts".into()));
        }
        let n = mult
            .iter()
            .enumerate()
            .map(|(i, &k)| (i as u64 + 1) * k as u64)
            .sum::<u64>();
        let n =
            u32::try_from(n).map_err(|_| Error::InvalidParameter("partition too large".into()))?;
        Ok(Partition { n, mult })
    }

    /// Builds the partition from a list of parts in any order.
    pub fn from_parts(parts: &[u32]) -> Result<Self> {
        let largest = parts.iter().copied().max().unwrap_or(0) as usize;
        let mut mult = vec![0; largest];
        for &p in parts {
            if p == 0 {
                return Err(Error::InvalidParameter("parts must be positive".into()));
            }
            mult[p as usize - 1] += 1;
        }
        Self::from_mult(mult)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// `[k_1, k_2, ..., k_l]`.
    pub fn mult(&self) -> &[u32] {
        &self.mult
    }

    /// Multiplicity of part `j` (zero for `j` beyond the largest part).
    pub fn multiplicity(&self, j: usize) -> u32 {
        if j == 0 {
            0
        } else {
            self.mult.get(j - 1).copied().unwrap_or(0)
        }
    }

    /// Parts in descending order.
    pub fn parts(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for (i, &k) in self.mult.iter().enumerate().rev() {
            out.extend(std::iter::repeat_n(i as u32 + 1, k as usize));
        }
        out
    }

    pub fn stats(&self) -> PartitionStats {
        let mut k = 0;
        let mut q = 0;
        let mut s = 0;
        for (i, &m) in self.mult.iter().enumerate() {
            if m > 0 {
                k += m;
                q += 1;
                if s == 0 {
                    s = i as u32 + 1;
                }
            }
        }
        PartitionStats {
            k,
            q,
            s,
            l: self.mult.len() as u32,
        }
    }
}

/// Iterator over the partitions of `n` in descending lexicographic order of
/// their parts: `(n)`, `(n-1, 1)`, ..., `(1, ..., 1)`.
#[derive(Debug, Clone)]
pub struct Partitions {
    parts: Vec<u32>,
    done: bool,
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if self.done {
            return None;
        }
        let current = Partition::from_parts(&self.parts).expect("parts are positive");
        // Strip the trailing ones, decrement the last part > 1, then refill
        // greedily with parts no larger than it.
        let mut ones = 0u32;
        while self.parts.last() == Some(&1) {
            self.parts.pop();
            ones += 1;
        }
        match self.parts.last_mut() {
            None => self.done = true,
            Some(last) => {
                *last -= 1;
                let cap = *last;
                let mut rest = ones + 1;
                while rest > 0 {
                    let p = rest.min(cap);
                    self.parts.push(p);
                    rest -= p;
                }
            }
        }
        Some(current)
    }
}

/// Streams every partition of `n` exactly once.
pub fn enumerate_partitions(n: u32) -> Result<Partitions> {
    if n == 0 {
        return Err(Error::InvalidParameter("partitions need n >= 1".into()));
    }
    Ok(Partitions {
        parts: vec![n],
        done: false,
    })
}

/// How many partitions of `n` have each statistics tuple, sorted by
/// `(k, Q, s, l)`.
pub fn stat_counts(n: u32) -> Result<Vec<(PartitionStats, u64)>> {
    Ok(cached_stat_counts(n)?.as_ref().clone())
}

type StatCounts = Vec<(PartitionStats, u64)>;

/// Memoised per `n`.
fn cached_stat_counts(n: u32) -> Result<Arc<StatCounts>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<StatCounts>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().unwrap().get(&n) {
        return Ok(Arc::clone(hit));
    }
    let mut counts: HashMap<PartitionStats, u64> = HashMap::new();
    for p in enumerate_partitions(n)? {
        *counts.entry(p.stats()).or_default() += 1;
    }
    let mut out: Vec<_> = counts.into_iter().collect();
    out.sort_by_key(|(st, _)| (st.k, st.q, st.s, st.l));
    let out = Arc::new(out);
    cache.lock().unwrap().insert(n, Arc::clone(&out));
    Ok(out)
}

fn require_terms(a: &SeqValues, n: u32) -> Result<()> {
    if a.len() < n as usize {
        return Err(Error::SequenceTooShort {
            needed: n as usize,
            got: a.len(),
        });
    }
    Ok(())
}

fn powers<R: CoeffRing>(x: &R, max: u32) -> Vec<R> {
    let mut out = Vec::with_capacity(max as usize + 1);
    out.push(R::one());
    for i in 1..=max as usize {
        let next = out[i - 1].times(x);
        out.push(next);
    }
    out
}

fn count_as<R: CoeffRing>(count: u64) -> R {
    R::from_rational(&Rational::from_integer(count))
}

/// Sums `count * weight(s, l)` over the tuples sharing each `(k, Q)`.
fn bucket_by_kq<R: CoeffRing>(
    n: u32,
    weight: impl Fn(u32, u32) -> R,
) -> Result<Vec<(u32, u32, R)>> {
    let mut buckets: Vec<(u32, u32, R)> = Vec::new();
    for (st, count) in cached_stat_counts(n)?.iter() {
        let w = weight(st.s, st.l);
        if w.is_zero() {
            continue;
        }
        let w = w.times(&count_as(*count));
        match buckets.last_mut() {
            Some((k, q, acc)) if *k == st.k && *q == st.q => *acc = acc.plus(&w),
            _ => buckets.push((st.k, st.q, w)),
        }
    }
    Ok(buckets)
}

/// `prefix[i] = x_1 + ... + x_i`, so a window `x_{l-s+1} + ... + x_l` is
/// `prefix[l] - prefix[l-s]`.
fn prefix_sums<R: CoeffRing>(n: u32, term: impl Fn(usize) -> R) -> Vec<R> {
    let mut out = Vec::with_capacity(n as usize + 1);
    out.push(R::zero());
    for i in 1..=n as usize {
        let next = out[i - 1].plus(&term(i));
        out.push(next);
    }
    out
}

fn window_of<R: CoeffRing>(prefix: &[R], s: u32, l: u32) -> R {
    prefix[l as usize].minus(&prefix[(l - s) as usize])
}

/// `sum_{pi in P(n)} t^k u^Q weight(s, l)` for a caller-supplied window weight.
fn tu_weighted<R: CoeffRing>(n: u32, t: &R, u: &R, weight: impl Fn(u32, u32) -> R) -> Result<R> {
    let tp = powers(t, n);
    let up = powers(u, n);
    let mut acc = R::zero();
    for (k, q, w) in bucket_by_kq(n, weight)? {
        acc = acc.plus(&tp[k as usize].times(&up[q as usize]).times(&w));
    }
    Ok(acc)
}

fn a_at<R: CoeffRing>(a: &SeqValues, i: usize) -> R {
    R::from_rational(a.get(i))
}

/// `sum_{pi in P(n)} t^k u^Q a_s`.
pub fn wsum_smallest<R: CoeffRing>(n: u32, a: &SeqValues, t: &R, u: &R) -> Result<R> {
    require_terms(a, n)?;
    tu_weighted(n, t, u, |s, _| a_at(a, s as usize))
}

/// `sum_{pi in P(n)} t^k u^Q a_l`.
pub fn wsum_largest<R: CoeffRing>(n: u32, a: &SeqValues, t: &R, u: &R) -> Result<R> {
    require_terms(a, n)?;
    tu_weighted(n, t, u, |_, l| a_at(a, l as usize))
}

/// `sum_{pi in P(n)} t^k u^Q sum_{j=1..s} a_{l-s+j}`.
pub fn wsum_window<R: CoeffRing>(n: u32, a: &SeqValues, t: &R, u: &R) -> Result<R> {
    require_terms(a, n)?;
    let prefix = prefix_sums(n, |i| a_at::<R>(a, i));
    tu_weighted(n, t, u, |s, l| window_of(&prefix, s, l))
}

/// Validates `t` for the divisor-side family: `t` must be a unit and not 1.
pub(crate) fn check_t<R: CoeffRing>(t: &R) -> Result<R> {
    if t.is_zero() || t.is_one() {
        return Err(Error::InvalidParameter(format!(
            "t must differ from 0 and 1 (got t = {t})"
        )));
    }
    t.inverse()
        .map_err(|_| Error::InvalidParameter(format!("t = {t} is not invertible")))
}

/// `sum_{pi in P(n)} t^(k-1) ((t-1)/t)^(Q-1) (x_{l-s+1} + ... + x_l)`.
fn t_weighted<R: CoeffRing>(n: u32, t: &R, term: impl Fn(usize) -> R) -> Result<R> {
    let t_inv = check_t(t)?;
    let ratio = t.minus(&R::one()).times(&t_inv);
    let tp = powers(t, n);
    let rp = powers(&ratio, n);
    let prefix = prefix_sums(n, term);
    let mut acc = R::zero();
    for (k, q, w) in bucket_by_kq(n, |s, l| window_of(&prefix, s, l))? {
        acc = acc.plus(&tp[k as usize - 1].times(&rp[q as usize - 1]).times(&w));
    }
    Ok(acc)
}

/// Partition side of the divisor identity:
/// `sum_{pi in P(n)} t^(k-1) ((t-1)/t)^(Q-1) sum_{j=1..s} a_{l-s+j}`.
pub fn wsum_theorem4_lhs<R: CoeffRing>(n: u32, a: &SeqValues, t: &R) -> Result<R> {
    require_terms(a, n)?;
    t_weighted(n, t, |i| a_at(a, i))
}

/// As [`wsum_theorem4_lhs`], each window term `a_i` weighted by `t^i`.
pub fn wsum_corollary1_lhs<R: CoeffRing>(n: u32, a: &SeqValues, t: &R) -> Result<R> {
    require_terms(a, n)?;
    check_t(t)?;
    let tp = powers(t, n);
    t_weighted(n, t, |i| tp[i].scale(a.get(i)))
}

/// As [`wsum_theorem4_lhs`] with window terms `a_i - t a_{i-1}`, `a_0 = 0`.
pub fn wsum_corollary2_lhs<R: CoeffRing>(n: u32, a: &SeqValues, t: &R) -> Result<R> {
    require_terms(a, n)?;
    t_weighted(n, t, |i| a_at::<R>(a, i).minus(&t.scale(a.get(i - 1))))
}
