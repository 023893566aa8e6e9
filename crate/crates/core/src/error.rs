use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("vectors are not linearly independent")]
    NotIndependent,
    #[error("span is not an ideal: {0}")]
    NotAnIdeal(String),
    #[error("invalid Lie algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid section: {0}")]
    InvalidSection(String),
    #[error("requested degree {requested} exceeds certified validity {attainable}")]
    DegreeTooHigh { requested: usize, attainable: isize },
    #[error("insufficient validity: need at least {required}, have {available}")]
    InsufficientValidity { required: usize, available: isize },
    #[error("arity {0} too large for slot enumeration (max {max})", max = crate::poly::MAX_ORACLE_ARITY)]
    ArityTooLarge(usize),
    #[error("value of h_(c,{degree}) escapes the ideal")]
    IdealEscape { degree: usize },
    #[error("{0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
