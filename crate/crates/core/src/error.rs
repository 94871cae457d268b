use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Input outside the operation's domain (length mismatch, non-dominant weight, ...).
    #[error("invalid argument: {0}")]
    Argument(String),

    /// A size guard refused the computation.
    #[error("{what}: estimated size {estimate} exceeds limit {limit}")]
    Resource {
        what: &'static str,
        estimate: u128,
        limit: u128,
    },

    /// Point counts at the supplied primes are not explained by a polynomial of the given degree.
    #[error("non-polynomial count: no polynomial of degree <= {degree_bound} fits {points} points")]
    NonPolynomialCount { degree_bound: usize, points: usize },

    /// An internal consistency check failed. Always a bug.
    #[error("invariant violation: {0}")]
    InvariantViolation(String),

    /// Two independent computations of the same quantity disagree.
    #[error("mismatch: {0}")]
    Mismatch(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// An error raised while handling one weight of a larger computation.
    #[error("at μ = {mu}: {source}")]
    AtWeight { mu: String, source: Box<Error> },
}

pub(crate) fn arg<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Argument(msg.into()))
}
