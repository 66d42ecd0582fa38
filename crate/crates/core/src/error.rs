use thiserror::Error;

use crate::crossing::Witness;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{message} at line {line}")]
    Parse { line: usize, message: String },

    #[error("ground set size {0} outside [1, 64]")]
    GroundSize(usize),

    #[error("set {mask:#x} has elements outside ground set of size {n}")]
    OutOfGround { mask: u64, n: usize },

    #[error("family is not {k}-cross-free in strict mode: {witness}")]
    NotCrossFree { k: usize, witness: Witness },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("malformed tree: {0}")]
    MalformedTree(String),

    #[error("universe has {size} members, limit is {limit}")]
    UniverseTooLarge { size: usize, limit: usize },

    #[error("infeasible table range: {0}")]
    InfeasibleRange(String),

    #[error("extraction failed: {0}")]
    Extraction(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}
