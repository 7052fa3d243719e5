use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unsupported expression: {0}")]
    Unsupported(String),
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("quantum numbers out of range: {0}")]
    OutOfRange(String),
    #[error("chain output does not have the expected shape: {0}")]
    ChainShape(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
