//! Error classes, each with its own process exit code.

use thiserror::Error;

pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_BREAKDOWN: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    /// Invalid configuration or an input that cannot satisfy it
    /// (bad target mode, l out of range, shape mismatches). Exit 2.
    #[error("configuration error: {0}")]
    Config(String),
    /// Filesystem failure. Exit 3.
    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
    /// Malformed input data, with the offending line. Exit 3.
    #[error("{path}:{line}: {message}")]
    Data {
        path: String,
        line: usize,
        message: String,
    },
    /// The selection recursions lost positivity; the run cannot continue.
    /// Exit 4.
    #[error("numerical breakdown: {0}")]
    Breakdown(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Io { .. } | CliError::Data { .. } => EXIT_IO,
            CliError::Breakdown(_) => EXIT_BREAKDOWN,
        }
    }
}

impl From<gcss::GreedyError> for CliError {
    fn from(e: gcss::GreedyError) -> Self {
        match e {
            gcss::GreedyError::NumericalBreakdown { .. } => CliError::Breakdown(e.to_string()),
            other => CliError::Config(other.to_string()),
        }
    }
}

impl From<gcss::TargetError> for CliError {
    fn from(e: gcss::TargetError) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<gcss::OracleError> for CliError {
    fn from(e: gcss::OracleError) -> Self {
        CliError::Config(e.to_string())
    }
}
