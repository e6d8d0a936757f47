use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch between operands")]
    FieldMismatch,
    #[error("element is not invertible: {0}")]
    NotInvertible(String),
    #[error("not an element of A: {0}")]
    NotInRing(String),
    #[error("series is indistinguishable from zero at precision {0}")]
    ZeroAtPrecision(i64),
    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),
    #[error("Hensel lifting failed: {0}")]
    HenselFailure(String),
    #[error("infinite product stalled: {0}")]
    ProductStalled(String),
    #[error("inconsistent input: {0}")]
    Inconsistent(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
