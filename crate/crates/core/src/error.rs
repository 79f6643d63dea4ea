use thiserror::Error;

use crate::seqexpr::ParseError;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot evaluate a negative power of t at t = 0")]
    EvalAtZero,

    #[error("element {0} is not a unit of the coefficient ring")]
    NotAUnit(String),

    #[error("truncation orders differ ({left} vs {right})")]
    OrderMismatch { left: usize, right: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("sequence has {got} terms but {needed} are required")]
    SequenceTooShort { needed: usize, got: usize },

    #[error("invalid Fine product specification: {0}")]
    FineSpecInvalid(String),

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("division by zero while evaluating the sequence at n = {n}")]
    DivisionByZero { n: u64 },

    #[error("exponent {exponent} is not an integer at n = {n}")]
    NonIntegerExponent { n: u64, exponent: String },

    #[error("invalid rational literal {0:?}")]
    BadRational(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
