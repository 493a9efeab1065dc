use thiserror::Error;

use crate::opgraph::Family;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid dimension {0}: the operation spaces are defined for n >= 3")]
    InvalidDimension(usize),

    #[error("operation index {index} is not defined for family {family}")]
    InvalidOperation { index: i32, family: Family },

    #[error("invalid composition order {0}: order must be at least 1")]
    InvalidOrder(usize),

    #[error("composition {0} is not meaningful")]
    NotMeaningful(String),

    #[error("enumeration too large: {count} chains exceed the cap of {cap}")]
    EnumerationTooLarge { count: String, cap: usize },

    #[error(
        "characteristic polynomial computation produced a non-integral coefficient at step {step}"
    )]
    NonIntegralCoefficient { step: usize },

    #[error("need n >= {min} for this identity, got n = {n}")]
    InsufficientBaseCases { n: usize, min: usize },

    #[error("need {need} terms, only {have} available")]
    InsufficientTerms { have: usize, need: usize },

    #[error("unknown sequence id {0:?}")]
    UnknownSequence(String),

    #[error("malformed sequence data: {0}")]
    MalformedSequence(String),

    #[error("direction {0} is not a unit vector")]
    InvalidDirection(String),

    #[error("direction must be nonzero")]
    ZeroDirection,

    #[error("cannot apply {op} to a {found} field (expects a {expected} field)")]
    KindMismatch {
        op: String,
        expected: &'static str,
        found: &'static str,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("operation space is internally inconsistent: {0}")]
    Inconsistent(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
