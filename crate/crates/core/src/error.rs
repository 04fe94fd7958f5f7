use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("group order exceeds the configured cap of {cap}")]
    GroupTooLarge { cap: usize },

    #[error("invalid group table: {0}")]
    InvalidTable(String),

    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("invalid group spec: {0}")]
    InvalidSpec(String),

    #[error("elements belong to different groups")]
    GroupMismatch,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("sublattice is not contained in the superlattice")]
    NotContained,

    #[error("depth {requested} exceeds the configured cap of {cap}")]
    DepthTooLarge { requested: usize, cap: usize },

    #[error("element is not a unit of the group ring")]
    NotAUnit,

    #[error("group is not abelian")]
    NotAbelian,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("unknown element `{0}`")]
    UnknownElement(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("config: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }
}
