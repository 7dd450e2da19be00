use thiserror::Error;

use crate::gaussian::GaussianInt;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero is not allowed as input to {0}")]
    ZeroInput(&'static str),

    #[error("division by zero")]
    DivisionByZero,

    #[error("{0} is not a canonical prime")]
    NotCanonicalPrime(GaussianInt),

    #[error("{prime} is in class {class}, expected {expected}")]
    WrongClass {
        prime: GaussianInt,
        class: char,
        expected: &'static str,
    },

    #[error("norm of {0} exceeds the supported factorization range (2^64)")]
    NormTooLarge(GaussianInt),

    #[error("invalid witness: {0}")]
    InvalidWitness(String),

    #[error("invalid precondition: {0}")]
    Precondition(String),

    /// A constructive step found no answer where one is guaranteed.
    /// Never expected; indicates a bug or a counterexample.
    #[error("construction failed: {0}")]
    ConstructionFailed(String),

    #[error("invalid restriction: {0}")]
    InvalidRestriction(String),

    #[error("parse error at position {position}: {message}\n  {input}\n  {caret:>width$}", caret = "^", width = position + 1)]
    Parse {
        input: String,
        position: usize,
        message: String,
    },
}

impl Error {
    pub(crate) fn parse(input: &str, position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            input: input.to_string(),
            position,
            message: message.into(),
        }
    }
}
