use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("signature mismatch: degree {degree} but r1 + 2 r2 = {r1} + 2*{r2}")]
    SignatureMismatch { degree: u32, r1: u32, r2: u32 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("{formula} requires x >= {min_x} (got x = {x})")]
    Validity { formula: &'static str, min_x: f64, x: f64 },

    #[error("root solver did not converge: {0}")]
    Convergence(String),

    #[error("no crossover: {0}")]
    NoCrossover(String),

    #[error("limit {limit} exceeds the sieve cap {cap}")]
    LimitExceeded { limit: u64, cap: u64 },

    #[error("invalid input: {0}")]
    Parse(String),

    #[error("strict validation failed: {0}")]
    Strict(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
