use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: vertex id {id} outside [1, {n}]")]
    VertexOutOfRange { line: usize, id: u64, n: usize },

    #[error("line {line}: negative arc weight {weight}")]
    NegativeWeight { line: usize, weight: i64 },

    #[error("{0}")]
    Domain(String),

    #[error("graph is not symmetric; landmark preprocessing needs undirected distances")]
    Asymmetric,

    #[error("malformed {kind} file: {message}")]
    Format { kind: &'static str, message: String },

    #[error("graph fingerprint mismatch: index was built for graph {expected:016x}, got graph {found:016x}")]
    FingerprintMismatch { expected: u64, found: u64 },

    #[error("engines disagree on ({source_vertex}, {target}): {first} vs {second}")]
    EngineDisagreement {
        source_vertex: u32,
        target: u32,
        first: f64,
        second: f64,
    },

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(message: impl Into<String>) -> Self {
        Error::Domain(message.into())
    }

    pub(crate) fn format(kind: &'static str, message: impl Into<String>) -> Self {
        Error::Format {
            kind,
            message: message.into(),
        }
    }
}
