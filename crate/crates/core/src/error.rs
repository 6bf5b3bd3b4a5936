use thiserror::Error;

/// Errors raised by model construction, evaluation and the exact oracles.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("division by zero in the {0} component")]
    DivisionByZero(&'static str),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("invalid solution: {0}")]
    InvalidSolution(String),

    #[error("enumeration budget exceeded: {subsets} subsets > budget {budget}")]
    BudgetExceeded { subsets: u128, budget: u128 },

    #[error("instance has no feasible location set")]
    NoFeasibleSubset,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("fixture checksum mismatch: expected {expected}, found {found}")]
    Checksum { expected: String, found: String },

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
