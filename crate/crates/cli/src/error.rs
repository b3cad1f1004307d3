use thiserror::Error;

/// A failed command, grouped by exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Unreadable or malformed input, or an invalid flag value.
    #[error("parse error: {0}")]
    Parse(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    /// The report could not be written.
    #[error("output error: {0}")]
    Output(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Output(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Dimension(_) => 3,
            CliError::Numerical(_) => 4,
        }
    }
}

impl From<coreep::Error> for CliError {
    fn from(e: coreep::Error) -> Self {
        use coreep::Error as E;
        let msg = e.to_string();
        match e {
            E::DimensionMismatch(_) => CliError::Dimension(msg),
            E::InvalidMatrix(_) | E::InvalidTolerance(_) => CliError::Parse(msg),
            E::NumericalFailure(_) | E::IndexTooLarge(_) | E::IndexNonzero(_) | E::NotInRange(_) => {
                CliError::Numerical(msg)
            }
        }
    }
}
