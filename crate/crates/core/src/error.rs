use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgError {
    /// A computation ran past its step budget. Never a wrong answer.
    #[error("resource budget exhausted: {0}")]
    ResourceExhausted(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("ring map is not well defined: relation {0} does not map to zero")]
    IllDefinedMap(String),
    #[error("element is not a unit: {0}")]
    NotAUnit(String),
    #[error("basis is not free: {0}")]
    BasisNotFree(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invariant failure: {0}")]
    InvariantFailure(String),
}

pub type Result<T> = std::result::Result<T, AlgError>;

impl AlgError {
    pub fn is_budget(&self) -> bool {
        matches!(self, AlgError::ResourceExhausted(_))
    }
}
