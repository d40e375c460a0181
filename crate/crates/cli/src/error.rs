use thiserror::Error;

/// Failure of a run, with the process exit code it maps to.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Validation(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("verification failed: {0}")]
    Mismatch(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) | CliError::Io(_) => 1,
            CliError::Numerical(_) => 2,
            CliError::Mismatch(_) => 3,
        }
    }
}

impl From<rabi_core::Error> for CliError {
    fn from(e: rabi_core::Error) -> Self {
        use rabi_core::Error as E;
        match e {
            E::Domain(_) | E::Unsupported(_) => CliError::Validation(e.to_string()),
            E::PoleProximity { .. } | E::Unconverged { .. } | E::Inconsistent { .. } | E::Solver(_) => {
                CliError::Numerical(e.to_string())
            }
        }
    }
}
