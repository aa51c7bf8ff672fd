use thiserror::Error;

/// Failures after argument parsing succeeded. All map to exit status 1.
#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Domain(#[from] gibbs_core::Error),
    #[error("{path}:{line}: {message}")]
    LevelFile { path: String, line: usize, message: String },
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Input(String),
}
