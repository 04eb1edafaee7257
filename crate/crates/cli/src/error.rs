use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("inadmissible pair (closure residual {residual:e})")]
    InadmissiblePair { residual: f64 },
    #[error(transparent)]
    Core(poncelet_core::Error),
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("malformed pair file: {0}")]
    PairFile(#[from] serde_json::Error),
}

impl From<poncelet_core::Error> for CliError {
    fn from(e: poncelet_core::Error) -> Self {
        match e {
            poncelet_core::Error::InadmissiblePair { residual } => CliError::InadmissiblePair { residual },
            poncelet_core::Error::InvalidArgument(msg) | poncelet_core::Error::InfeasibleParams(msg) => {
                CliError::InvalidConfig(msg)
            }
            other => CliError::Core(other),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Exit status when a run stops before producing a report.
pub const EXIT_ERROR: i32 = 2;
/// Exit status when a report was produced and at least one check failed.
pub const EXIT_FAILED: i32 = 1;
