use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("invalid cube: {0}")]
    InvalidCube(String),
    #[error("invalid simplicial set: {0}")]
    InvalidSSet(String),
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("check failed: {0}")]
    CheckFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
