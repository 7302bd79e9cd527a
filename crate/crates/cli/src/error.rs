use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid config key `{key}`: {message}")]
    Config { key: String, message: String },

    #[error("cannot parse config {path}: {source}")]
    ConfigSyntax { path: PathBuf, source: serde_json::Error },

    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },

    #[error("{path}: {message}")]
    Data { path: PathBuf, message: String },

    #[error(transparent)]
    Model(#[from] dlcz_core::Error),

    #[error("output: {0}")]
    Output(#[source] std::io::Error),

    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub(crate) fn config(key: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Config { key: key.into(), message: message.into() }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }
}

/// Re-labels a parameter error from the model as a config-key error.
pub(crate) fn keyed(err: dlcz_core::Error) -> CliError {
    match err {
        dlcz_core::Error::InvalidParameter { name, reason } => CliError::config(name, reason),
        other => CliError::Model(other),
    }
}
