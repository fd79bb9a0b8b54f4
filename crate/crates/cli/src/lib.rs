//! Command-line front end for the anharmonic oscillator toolkit.

pub mod args;
pub mod commands;
pub mod output;
pub mod reference;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] anharmonic_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("{failed} of {total} checked comparisons outside tolerance")]
    CheckFailed { failed: usize, total: usize },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// 2 for bad input, 1 for failed checks and numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_usage() => 2,
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}
