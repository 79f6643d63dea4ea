//! Exact verification of weighted partition identities.
//!
//! Each identity equates a sum over the partitions of `n`, weighted by the
//! number of parts `k`, the number of distinct parts `Q`, and the smallest
//! and largest parts `s` and `l`, with either a q-series coefficient or a
//! divisor sum. This crate computes both sides independently and compares
//! them exactly:
//!
//! - [`ring`]: big rationals and Laurent polynomials in `t`, `u`;
//! - [`series`]: truncated power series in `q` and q-Pochhammer products;
//! - [`partition`]: partition enumeration, statistics and weighted sums;
//! - [`arith`]: divisors, `sigma_k`, Möbius inversion, divisor-side sums;
//! - [`identity`]: series sides, Fine and Heine checks, reports;
//! - [`seqexpr`]: the expression language for user sequences `a_n`.

pub mod arith;
pub mod error;
pub mod identity;
pub mod partition;
pub mod ring;
pub mod seqexpr;
pub mod series;

pub use arith::SeqValues;
pub use error::{Error, Result};
pub use identity::{check_identity, Identity, IdentityReport, Sequence};
pub use partition::{Partition, PartitionStats};
pub use ring::{CoeffRing, Mode, PolyTU, Rational};
pub use series::TruncatedSeries;
