use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// The memo table or an enumeration ran past its configured size.
    #[error("budget exceeded while {what}: limit {limit}")]
    BudgetExceeded { what: String, limit: usize },

    #[error("level mismatch: expected {expected}, found {found}")]
    LevelMismatch { expected: usize, found: usize },

    #[error("vertex {0} is not reachable")]
    Unreachable(String),

    /// A reachable vertex with no continuation to the requested level.
    #[error("dead end at {0}: the model produced a vertex with no paths to the horizon")]
    DeadEnd(String),

    #[error("function is not harmonic at {vertex}: residual {residual:e}")]
    NotHarmonic { vertex: String, residual: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("proposal gives zero probability to child {0}; the estimator would be biased")]
    ZeroProposal(String),

    #[error("argument outside domain: {0}")]
    Domain(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    pub fn budget(what: impl Into<String>, limit: usize) -> Self {
        Error::BudgetExceeded {
            what: what.into(),
            limit,
        }
    }

    pub fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
