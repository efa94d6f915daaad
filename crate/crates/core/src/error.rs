use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid modulus {0}: expected 2 <= m <= 2^31")]
    InvalidModulus(i64),

    #[error("invalid module factors {factors:?} over Z/{m}")]
    InvalidFactors { m: i64, factors: Vec<i64> },

    #[error("ill-defined map: {0}")]
    IllDefinedMap(String),

    #[error("type mismatch: {0}")]
    Mismatch(String),

    #[error("enumeration of {what} needs {needed} items, budget is {limit}")]
    BoundExceeded { what: String, needed: u128, limit: u128 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("not a quasi-isomorphism: {0}")]
    NotQuasiIso(String),

    #[error("no splitting matches the zigzag over ({0})")]
    NoMatchingSplitting(String),

    #[error("overlap mismatch while gluing: {0}")]
    OverlapMismatch(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
