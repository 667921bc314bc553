use thiserror::Error;

use crate::algebra::Violation;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("{0}")]
    InvalidParameters(String),

    #[error("Leibniz identity fails on {} basis triple(s), first at ({}, {}, {})",
        .0.len(), .0[0].i, .0[0].j, .0[0].k)]
    LeibnizViolation(Vec<Violation>),

    #[error("operator space is not closed under commutators")]
    NotBracketClosed,

    /// Two independent computations disagree; always a bug, never bad input.
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("basis of size {size} exceeds the symbolic trace limit of {limit}")]
    BasisTooLarge { size: usize, limit: usize },

    #[error("domain violation: {0}")]
    Domain(String),

    #[error("invalid theorem id `{0}`")]
    InvalidTheorem(String),

    #[error("cannot parse rational `{0}`")]
    ParseRational(String),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Whether the error signals an internal inconsistency rather than bad
    /// input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Inconsistent(_) | Error::NotBracketClosed)
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
