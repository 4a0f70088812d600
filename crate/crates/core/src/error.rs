use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("ambiguous grid indexing: {0}")]
    AmbiguousIndexing(String),

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("size cap exceeded: {0}")]
    CapExceeded(String),

    #[error("integer overflow: {0}")]
    Overflow(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
