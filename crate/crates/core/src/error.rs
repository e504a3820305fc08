use thiserror::Error;

/// Errors raised by the algebra kernel and the verification harness.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("pole at evaluation point {0}")]
    Pole(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("variable sets differ")]
    VarSetMismatch,
    #[error("exponent vector has length {found}, expected {expected}")]
    ExponentLength { expected: usize, found: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("inexact division: {0}")]
    InexactDivision(String),
    #[error("eigenvalue collision between {0} and {1}")]
    EigenvalueCollision(String, String),
    #[error("singular Gram matrix at {0}")]
    SingularGram(String),
    #[error("exponent {0} outside the packed range of the product engine")]
    ExponentRange(i64),
    #[error("unknown statement id '{0}'")]
    UnknownStatement(String),
    #[error("cache I/O: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, Error>;
