use newton_holo::{DivDiffError, ExprError, QuadError, SeriesError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Numerical(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

impl From<ExprError> for CliError {
    fn from(e: ExprError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<QuadError> for CliError {
    fn from(e: QuadError) -> Self {
        match e {
            QuadError::NoConvergence { .. } | QuadError::Eval(_) => CliError::Numerical(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<SeriesError> for CliError {
    fn from(e: SeriesError) -> Self {
        match e {
            SeriesError::Quad(q) => q.into(),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<DivDiffError> for CliError {
    fn from(e: DivDiffError) -> Self {
        match e {
            DivDiffError::Quad(q) => q.into(),
            other => CliError::Numerical(other.to_string()),
        }
    }
}
