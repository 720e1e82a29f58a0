use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config line {line}: unknown key '{key}' (known keys: command, N, kappa1, kappa2, model, dt_factor, t_end, sample_times, output)")]
    UnknownKey { key: String, line: usize },

    #[error("config line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("invalid configuration: {0}")]
    Invalid(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: malformed CSV: {message}")]
    Csv { path: PathBuf, message: String },

    #[error(transparent)]
    Core(#[from] qcghost::Error),
}
