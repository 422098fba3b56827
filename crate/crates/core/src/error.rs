use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("dimension cap {max_dim} too low: dimension {needed} is required and the complex was truncated")]
    DimensionCap { max_dim: usize, needed: usize },

    #[error("vertex {0} is not in the complex")]
    VertexAbsent(u32),

    #[error("not a subcomplex: simplex {0:?} is missing from the ambient complex")]
    NotSubcomplex(Vec<u32>),

    #[error("brute-force oracle size guard exceeded: {0}")]
    OracleTooLarge(String),

    #[error("pattern has {0} vertices; at most {1} are supported")]
    PatternTooLarge(usize, usize),

    #[error("pattern vertex {vertex} has out-degree {out_degree} > m = {m}")]
    OutDegreeExceeded { vertex: usize, out_degree: u32, m: u32 },

    #[error("regression needs at least 3 positive points, got {0}")]
    InsufficientPoints(usize),

    #[error("summary has no checkpoints")]
    EmptySummary,

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
