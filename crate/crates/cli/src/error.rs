use thiserror::Error;

/// Failure classes of a run, each with its exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),

    #[error(transparent)]
    Core(#[from] hc_core::Error),

    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },

    /// One or more checks missed their tolerance; carries the JSON report.
    #[error("{summary}")]
    CheckFailed { summary: String, report: String },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::CheckFailed { .. } => 1,
            CliError::Core(hc_core::Error::Consistency(_)) => 1,
            _ => 2,
        }
    }
}
