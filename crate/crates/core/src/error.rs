use std::path::PathBuf;
use thiserror::Error;

/// Errors surfaced by the pipeline stages.
///
/// Record-level input problems (a malformed bill line, an unresolvable
/// legislator id) are not errors of this type; they are collected into the
/// relevant outcome struct so a run can continue and report counts.
#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// Invalid configuration or invalid use of an operation (non-contiguous
    /// months, month outside roster coverage, infeasible generator config).
    #[error("invalid configuration: {0}")]
    Config(String),

    /// Input data that cannot be processed at all (as opposed to per-record
    /// issues, which are reported and skipped).
    #[error("invalid data: {0}")]
    Data(String),

    /// A numerical stage failed (e.g. power iteration did not converge).
    #[error("computation failed: {0}")]
    Compute(String),
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
