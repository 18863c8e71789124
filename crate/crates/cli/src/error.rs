use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] eisenstein_cubic::Error),
    #[error("malformed Eisenstein integer {input:?}: {reason}")]
    Literal { input: String, reason: String },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("{path}:{line}: cache schema version {found}, expected {expected}")]
    SchemaMismatch { path: PathBuf, line: usize, found: u32, expected: u32 },
    #[error("{path}:{line}: {reason}")]
    CacheFormat { path: PathBuf, line: usize, reason: String },
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn io_error(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> CliError {
        let path = path.into();
        move |source| CliError::Io { path, source }
    }
}
