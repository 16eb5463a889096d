use num_bigint::BigInt;
use thiserror::Error;

/// Domain errors raised by the invariant, bundle and census operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid fiber ({a}, {b}): multiplicity must be positive")]
    NonPositiveMultiplicity { a: BigInt, b: BigInt },

    #[error("invalid fiber ({a}, {b}): a and b must be coprime")]
    NonCoprimeFiber { a: BigInt, b: BigInt },

    #[error("formula inapplicable: e = 0")]
    ZeroEulerNumber,

    #[error("not TildePSL2R: geometry is {0}")]
    NotTildePsl2r(&'static str),

    #[error("no horizontal surface: {0}")]
    NoHorizontalSurface(&'static str),

    #[error("not in SL(2,Z): det = {0}")]
    Determinant(BigInt),

    #[error("not Anosov: |trace| = {0}")]
    NotAnosov(BigInt),

    #[error("|trace| = {trace} exceeds bound k = {k}")]
    TraceExceedsBound { trace: BigInt, k: BigInt },

    #[error("invalid bound: {0}")]
    InvalidBound(String),

    #[error("search too large: {0}")]
    SearchTooLarge(String),

    #[error("conjugacy partition did not stabilize (caps tried: {caps:?})")]
    Unstable { caps: Vec<i64> },

    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
