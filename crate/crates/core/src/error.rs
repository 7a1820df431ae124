use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("variable count mismatch: {0} vs {1}")]
    VarMismatch(usize, usize),

    #[error("not divisible: {0}")]
    NotDivisible(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn precondition<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Precondition(msg.into()))
}
