use crate::expr::SyntaxError;

/// A failure, classified by the exit code it maps to.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error at {0}")]
    Syntax(#[from] SyntaxError),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("{0}")]
    Other(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Syntax(_) => 2,
            CliError::Precondition(_) => 3,
            CliError::Verification(_) => 4,
            CliError::Other(_) => 1,
        }
    }
}

impl From<ncinvert::Error> for CliError {
    fn from(e: ncinvert::Error) -> Self {
        use ncinvert::Error as E;
        match e {
            E::InverseCheck(_) => CliError::Verification(e.to_string()),
            E::ArityMismatch { .. } | E::DegreeMismatch { .. } | E::RingMismatch => {
                CliError::Other(e.to_string())
            }
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<ncinvert::rings::RingError> for CliError {
    fn from(e: ncinvert::rings::RingError) -> Self {
        CliError::Precondition(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Other(e.to_string())
    }
}
