use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("infinite valuation: p-adic order of 0")]
    InfiniteValuation,
    #[error("not p-integral: {0}")]
    NotPIntegral(String),
    #[error("supersingular: no unit root (p = {p} divides a_p = {a_p})")]
    Supersingular { p: u64, a_p: i64 },
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("unsupported prime: {0}")]
    UnsupportedPrime(String),
    #[error("precision out of range: {0}")]
    Precision(String),
    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("empty support")]
    EmptySupport,
    #[error("dimension {0} is not supported (at most {1})")]
    Dimension(usize, usize),
    #[error("not open: {0}")]
    NotOpen(String),
    #[error("not a unit: {0}")]
    NotUnit(String),
    #[error("singular matrix, reduction mod p: {0}")]
    Singular(String),
    #[error("invalid series key: {0}")]
    InvalidKey(String),
    #[error("hypothesis fails: {0}")]
    Hypothesis(String),
    #[error("singular curve: {0}")]
    SingularCurve(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
