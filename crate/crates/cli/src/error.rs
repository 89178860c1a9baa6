use std::path::PathBuf;

use superrad_core::ErrorClass;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] superrad_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("cannot read config {path}: {source}")]
    ConfigRead { path: PathBuf, source: std::io::Error },
    #[error("malformed config {path}: {source}")]
    ConfigParse { path: PathBuf, source: serde_json::Error },
    #[error("validation failed: {0}")]
    ValidationFailed(String),
    #[error("output: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv output: {0}")]
    Csv(#[from] csv::Error),
    #[error("json output: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) => match e.class() {
                ErrorClass::Validation => 2,
                ErrorClass::Numerical => 3,
                ErrorClass::Infeasible => 4,
            },
            CliError::Usage(_) | CliError::ConfigRead { .. } | CliError::ConfigParse { .. } => 2,
            CliError::ValidationFailed(_) => 3,
            CliError::Io(_) | CliError::Csv(_) | CliError::Json(_) => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

pub fn missing(flag: &str) -> CliError {
    CliError::Usage(format!("missing required parameter --{flag}"))
}
