use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("gcd({a}, {q}) = {gcd}; the modulus and numerator must be coprime")]
    NotCoprime { a: i64, q: u64, gcd: u64 },

    #[error("grid too coarse: {0}")]
    Resolution(String),

    #[error("work budget exceeded: {needed} evaluations requested, budget is {budget}")]
    Budget { needed: u128, budget: u128 },

    #[error("memory cap exceeded: {0}")]
    MemoryCap(String),

    #[error("a grid of {points} points aliases a polynomial of degree {degree}")]
    Alias { points: usize, degree: u64 },

    #[error("arc (q={q}, a={a}, b={b}) has a vanishing Gauss sum")]
    Inadmissible { q: u64, a: u64, b: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
