use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("arithmetic error: {0}")]
    Arithmetic(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("not semisimple: {0}")]
    NotSemisimple(String),
    #[error("decomposition failed: {0}")]
    DecompositionFailed(String),
    #[error("construction failed: {0}")]
    ConstructionFailed(String),
    #[error("unsupported character: {0}")]
    UnsupportedCharacter(String),
    #[error("invalid representation: {0}")]
    InvalidRep(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid_parameter(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
