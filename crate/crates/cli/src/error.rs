use std::path::PathBuf;

use thiserror::Error;

pub const EXIT_VIOLATIONS: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {message}")]
    InFile { path: PathBuf, message: String },
    #[error("invalid spec: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Core(#[from] aritygap_core::Error),
}

impl CliError {
    pub fn parse(line: usize, message: impl Into<String>) -> Self {
        CliError::Parse { line, message: message.into() }
    }

    pub fn in_file(self, path: &std::path::Path) -> Self {
        match self {
            e @ (CliError::Parse { .. } | CliError::Json(_)) => {
                CliError::InFile { path: path.to_path_buf(), message: e.to_string() }
            }
            e => e,
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(aritygap_core::Error::BudgetExceeded { .. }) => EXIT_BUDGET,
            _ => EXIT_INPUT,
        }
    }
}
