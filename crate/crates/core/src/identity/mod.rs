//! Both sides of every identity, and the comparison reports.

mod fine;
mod heine;
mod report;
mod series_side;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::arith::{
    divisor_transform, example1_closed_form, example2_closed_form, example3_closed_form,
    rhs_corollary1, rhs_theorem4, SeqValues,
};
use crate::error::{Error, Result};
use crate::partition::{
    wsum_corollary1_lhs, wsum_corollary2_lhs, wsum_largest, wsum_smallest, wsum_theorem4_lhs,
    wsum_window,
};
use crate::ring::{CoeffRing, Rational};
use crate::seqexpr;

pub use fine::{fine_check, fine_partition_sum, fine_product, FineSpec};
pub use heine::{heine_check, heine_proof_instance, heine_sides, QMonomial};
pub use report::{IdentityReport, ReportParams, ReportRow};
pub use series_side::{
    lhs_theorem1_series, lhs_theorem1_series_direct, lhs_theorem2_series,
    lhs_theorem2_series_direct, lhs_theorem3_series, lhs_theorem3_series_direct,
};

/// The identities this crate can check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Identity {
    /// Series side vs. `sum t^k u^Q a_s`.
    Thm1,
    /// Series side vs. `sum t^k u^Q a_l`.
    Thm2,
    /// Double-sum series side vs. `sum t^k u^Q (a_{l-s+1} + ... + a_l)`.
    Thm3,
    /// Partition sum vs. `sum_{d|n} t^d (a_1/t + ... + a_d/t^d)`.
    Thm4,
    /// Partition sum vs. `sum_{d|n} t^d (a_1 + ... + a_d)`.
    Cor1,
    /// First-difference partition sum vs. `sum_{d|n} a_d`.
    Cor2,
    /// `a_n = n`, `t = -1` vs. `(sigma_1 + tau_odd) / 2`.
    Ex1,
    /// `a_n = n^2`, `t = -1` vs. `(sigma_2 + sigma_1) / 2`.
    Ex2,
    /// Odd indicator, `t = -1` vs. `tau_odd`.
    Ex3,
}

impl Identity {
    pub const ALL: [Identity; 9] = [
        Identity::Thm1,
        Identity::Thm2,
        Identity::Thm3,
        Identity::Thm4,
        Identity::Cor1,
        Identity::Cor2,
        Identity::Ex1,
        Identity::Ex2,
        Identity::Ex3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::Thm1 => "thm1",
            Identity::Thm2 => "thm2",
            Identity::Thm3 => "thm3",
            Identity::Thm4 => "thm4",
            Identity::Cor1 => "cor1",
            Identity::Cor2 => "cor2",
            Identity::Ex1 => "ex1",
            Identity::Ex2 => "ex2",
            Identity::Ex3 => "ex3",
        }
    }

    /// Whether `u` takes part in the identity.
    pub fn uses_u(self) -> bool {
        matches!(self, Identity::Thm1 | Identity::Thm2 | Identity::Thm3)
    }

    /// Whether the sequence and `t` are fixed by the identity itself.
    pub fn is_example(self) -> bool {
        matches!(self, Identity::Ex1 | Identity::Ex2 | Identity::Ex3)
    }

    /// The fixed sequence of an example identity.
    pub fn builtin_sequence(self) -> Option<&'static str> {
        match self {
            Identity::Ex1 => Some("n"),
            Identity::Ex2 => Some("n^2"),
            Identity::Ex3 => Some("(1-(-1)^n)/2"),
            _ => None,
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Identity::ALL
            .into_iter()
            .find(|i| i.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown identity {s:?}")))
    }
}

/// A materialised sequence together with a human-readable description.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sequence {
    pub label: String,
    pub values: SeqValues,
}

impl Sequence {
    /// Parses and evaluates a sequence expression for `n = 1..=len`.
    pub fn from_expr(text: &str, len: usize) -> Result<Self> {
        let expr = seqexpr::parse(text)?;
        Ok(Sequence {
            label: text.to_string(),
            values: expr.materialize(len)?,
        })
    }

    pub fn from_values(label: impl Into<String>, values: SeqValues) -> Self {
        Sequence {
            label: label.into(),
            values,
        }
    }
}

type WsumFn<R> = fn(u32, &SeqValues, &R, &R) -> Result<R>;

fn rows_par<R: CoeffRing>(
    n_max: usize,
    row: impl Fn(usize) -> Result<(R, R)> + Sync,
) -> Result<Vec<(usize, R, R)>> {
    (1..=n_max)
        .into_par_iter()
        .map(|n| row(n).map(|(l, r)| (n, l, r)))
        .collect()
}

/// Runs one identity for `n = 1..=n_max` in the ring `R`.
///
/// `t` and `u` are ring elements: rationals in evaluated mode, the
/// indeterminates [`PolyTU::t`](crate::ring::PolyTU::t) and
/// [`PolyTU::u`](crate::ring::PolyTU::u) in symbolic mode. `u` is ignored
/// by the divisor-side identities; the examples also fix `t = -1` and their
/// own sequence, ignoring `seq`.
pub fn check_identity<R: CoeffRing>(
    which: Identity,
    seq: Option<&Sequence>,
    t: &R,
    u: &R,
    n_max: usize,
) -> Result<IdentityReport<R>> {
    if n_max == 0 {
        return Err(Error::InvalidParameter("n_max must be at least 1".into()));
    }
    let builtin;
    let seq = match which.builtin_sequence() {
        Some(expr) => {
            builtin = Sequence::from_expr(expr, n_max)?;
            &builtin
        }
        None => {
            seq.ok_or_else(|| Error::InvalidParameter(format!("{which} needs a sequence a_n")))?
        }
    };
    let a = &seq.values;
    if a.len() < n_max {
        return Err(Error::SequenceTooShort {
            needed: n_max,
            got: a.len(),
        });
    }
    let minus_one = R::from_int(-1);
    let t = if which.is_example() { &minus_one } else { t };

    let mut params = ReportParams::new(n_max);
    params.t = Some(t.to_string());
    if which.uses_u() {
        params.u = Some(u.to_string());
    }
    params.seq = Some(seq.label.clone());

    let n32 = |n: usize| n as u32;
    let rows = match which {
        Identity::Thm1 | Identity::Thm2 | Identity::Thm3 => {
            let (series, wsum): (_, WsumFn<R>) = match which {
                Identity::Thm1 => (lhs_theorem1_series(a, t, u, n_max)?, wsum_smallest),
                Identity::Thm2 => (lhs_theorem2_series(a, t, u, n_max)?, wsum_largest),
                _ => (lhs_theorem3_series(a, t, u, n_max)?, wsum_window),
            };
            rows_par(n_max, |n| {
                Ok((series.coeff(n).clone(), wsum(n32(n), a, t, u)?))
            })?
        }
        Identity::Thm4 => rows_par(n_max, |n| {
            Ok((
                wsum_theorem4_lhs(n32(n), a, t)?,
                rhs_theorem4(n as u64, a, t)?,
            ))
        })?,
        Identity::Cor1 => rows_par(n_max, |n| {
            Ok((
                wsum_corollary1_lhs(n32(n), a, t)?,
                rhs_corollary1(n as u64, a, t)?,
            ))
        })?,
        Identity::Cor2 => {
            let b = divisor_transform(a, n_max)?;
            rows_par(n_max, |n| {
                Ok((
                    wsum_corollary2_lhs(n32(n), a, t)?,
                    R::from_rational(b.get(n)),
                ))
            })?
        }
        Identity::Ex1 | Identity::Ex2 => {
            let closed: fn(u64) -> Rational = if which == Identity::Ex1 {
                example1_closed_form
            } else {
                example2_closed_form
            };
            rows_par(n_max, |n| {
                Ok((
                    wsum_theorem4_lhs(n32(n), a, t)?,
                    R::from_rational(&closed(n as u64)),
                ))
            })?
        }
        Identity::Ex3 => rows_par(n_max, |n| {
            Ok((
                wsum_corollary2_lhs(n32(n), a, t)?,
                R::from_rational(&example3_closed_form(n as u64)),
            ))
        })?,
    };
    Ok(IdentityReport::from_rows(which.name(), params, rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::PolyTU;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn example3_small() {
        let rep = check_identity(Identity::Ex3, None, &r(2), &r(3), 20).unwrap();
        assert!(rep.overall);
        assert_eq!(rep.rows.len(), 20);
        let row = rep.row(3).unwrap();
        assert_eq!((row.lhs.clone(), row.rhs.clone()), (r(2), r(2)));
        assert_eq!(rep.params.t.as_deref(), Some("-1"));
    }

    #[test]
    fn example1_small() {
        let rep = check_identity(Identity::Ex1, None, &r(2), &r(3), 20).unwrap();
        assert!(rep.overall);
        assert_eq!(rep.row(2).unwrap().lhs, r(2));
    }

    #[test]
    fn theorem4_with_identity_sequence() {
        let seq = Sequence::from_expr("n", 20).unwrap();
        let rep = check_identity(Identity::Thm4, Some(&seq), &r(2), &r(3), 20).unwrap();
        assert!(rep.overall);
        let row = rep.row(2).unwrap();
        assert_eq!((row.lhs.clone(), row.rhs.clone()), (r(5), r(5)));
        assert!(rep.params.u.is_none());
    }

    #[test]
    fn rejects_bad_t_and_missing_sequence() {
        let seq = Sequence::from_expr("n", 5).unwrap();
        assert!(matches!(
            check_identity(Identity::Thm4, Some(&seq), &r(1), &r(3), 5),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            check_identity(Identity::Thm1, None, &r(2), &r(3), 5),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            check_identity(Identity::Thm1, Some(&seq), &r(2), &r(3), 6),
            Err(Error::SequenceTooShort { needed: 6, got: 5 })
        ));
    }

    #[test]
    fn symbolic_theorems_small() {
        let seq = Sequence::from_expr("n^2 - 3*n + 1", 8).unwrap();
        for which in [
            Identity::Thm1,
            Identity::Thm2,
            Identity::Thm3,
            Identity::Thm4,
            Identity::Cor1,
            Identity::Cor2,
        ] {
            let rep = check_identity(which, Some(&seq), &PolyTU::t(), &PolyTU::u(), 8).unwrap();
            assert!(
                rep.overall,
                "{which}: first failure {:?}",
                rep.first_failure()
            );
        }
    }

    #[test]
    fn corruption_is_detected() {
        let mut rep = check_identity(Identity::Ex3, None, &r(2), &r(3), 6).unwrap();
        rep.corrupt_rhs(4);
        assert!(!rep.overall);
        assert_eq!(rep.first_failure(), Some(4));
    }

    #[test]
    fn names_round_trip() {
        for id in Identity::ALL {
            assert_eq!(id.name().parse::<Identity>().unwrap(), id);
        }
        assert!("thm5".parse::<Identity>().is_err());
    }
}
