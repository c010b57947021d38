use std::io;
use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Unreadable { path: PathBuf, source: io::Error },
    #[error("cannot write {path}: {source}")]
    Unwritable { path: PathBuf, source: io::Error },
    #[error("malformed state file, line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("{0}")]
    Invalid(String),
    #[error("verification failed: first failing check is {0}")]
    VerifyFailed(String),
    #[error(transparent)]
    Core(#[from] mmes_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Unreadable { .. } | CliError::Unwritable { .. } => 2,
            CliError::Malformed { .. } => 3,
            CliError::Invalid(_) | CliError::Core(_) => 4,
            CliError::VerifyFailed(_) => 1,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
