//! Plumbing behind the `popmap` binary: the operator file format, the
//! map-spec grammar and the subcommand bodies.

pub mod commands;
pub mod file;
pub mod spec;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed operator file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Format(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] popmap::Error),
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Process exit codes shared by every subcommand.
pub mod exit {
    pub const DETECTED: i32 = 0;
    pub const SUCCESS: i32 = 0;
    pub const INCONCLUSIVE: i32 = 1;
    pub const ERROR: i32 = 2;
}
