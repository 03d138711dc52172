use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("{value} is not a unit modulo {modulus}")]
    NotAUnit { value: u64, modulus: u64 },

    #[error("table of {requested} entries exceeds the limit of {limit}")]
    CapacityExceeded { requested: u128, limit: u128 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("arity mismatch: expected {expected}, got {actual}")]
    ArityMismatch { expected: String, actual: usize },

    #[error("witness refers to generator {0} which is not in the basis")]
    UnknownGenerator(String),

    #[error("estimated cost {estimated} exceeds budget {budget}")]
    BudgetExceeded { estimated: u128, budget: u128 },

    #[error("parse error at {position}: {message}")]
    Parse { position: String, message: String },

    #[error("value {value} at position {position} is out of range [0, {modulus})")]
    Range { value: i128, position: usize, modulus: u64 },

    #[error("expected {expected} values, found {found}")]
    Count { expected: usize, found: usize },
}

impl Error {
    pub(crate) fn parse(position: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse { position: position.into(), message: message.into() }
    }
}
