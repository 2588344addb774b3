use std::path::PathBuf;

use thiserror::Error;
use tfd_core::TfdError;

/// Failures of a command, each mapped to a process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    PropertyFailure(String),

    #[error("bad arguments: {0}")]
    BadArgs(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("numeric failure: {0}")]
    Numeric(TfdError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::PropertyFailure(_) => 1,
            CliError::BadArgs(_) => 2,
            CliError::Io { .. } => 3,
            CliError::Numeric(_) => 4,
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

impl From<TfdError> for CliError {
    fn from(e: TfdError) -> Self {
        match e {
            TfdError::CutoffTooSmall { .. }
            | TfdError::NonFinite
            | TfdError::QuadratureNotConverged { .. }
            | TfdError::NotHermitian(_)
            | TfdError::NotDensityMatrix(_) => CliError::Numeric(e),
            other => CliError::BadArgs(other.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
