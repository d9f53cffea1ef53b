use std::io;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags, unreadable or schema-violating documents.
    #[error("{0}")]
    Input(String),

    #[error(transparent)]
    Domain(#[from] ripp_core::Error),

    #[error("i/o error: {0}")]
    Io(#[from] io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    /// Some rows of a sweep failed; the output was still written.
    #[error("{0} row(s) failed")]
    RowFailures(usize),
}

impl CliError {
    /// 2 for input and schema problems, 3 for domain and solver failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Domain(ripp_core::Error::InvalidProblem(_) | ripp_core::Error::InvalidArgument(_)) => 2,
            CliError::Domain(_) | CliError::RowFailures(_) => 3,
            CliError::Io(_) | CliError::Csv(_) => 1,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
