use std::path::PathBuf;

use thiserror::Error;

/// Everything a command can fail with, split by exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot access {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid problem file: {0}")]
    Schema(String),

    #[error("unknown example '{0}' (expected one of: standard, delta, preferred)")]
    UnknownExample(String),

    #[error("invalid QG_THREADS value '{0}': expected a positive integer")]
    Threads(String),

    #[error("{0}")]
    Validation(String),

    #[error(transparent)]
    Domain(#[from] quotient_graph::Error),
}

impl CliError {
    /// 0 success, 1 domain failure, 2 I/O or parse failure.
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Io { .. } | Self::Parse { .. } | Self::Schema(_) | Self::UnknownExample(_) | Self::Threads(_) => 2,
            Self::Validation(_) | Self::Domain(_) => 1,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Self::Io {
            path: path.into(),
            source,
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        let (line, column) = (e.line(), e.column());
        let full = e.to_string();
        let message = full
            .strip_suffix(&format!(" at line {line} column {column}"))
            .unwrap_or(&full)
            .to_string();
        Self::Parse { line, column, message }
    }
}
