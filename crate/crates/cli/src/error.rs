use thiserror::Error;

/// CLI failure, carrying the process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Input is well-formed but fails a structural check (not LDOI, not
    /// unitary, shape mismatch).
    #[error("validation failure: {0}")]
    Validation(String),
    /// A computation or reproduced result missed its tolerance.
    #[error("numeric failure: {0}")]
    Numeric(String),
    #[error("usage error: {0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Numeric(_) => 3,
            CliError::Usage(_) => 4,
        }
    }
}

impl From<ldoi::Error> for CliError {
    fn from(e: ldoi::Error) -> Self {
        use ldoi::Error as E;
        match e {
            E::DimensionMismatch { .. }
            | E::Shape { .. }
            | E::SideNotSquare(_)
            | E::NotLdoi { .. }
            | E::NotUnitary { .. }
            | E::Parse(_) => CliError::Validation(e.to_string()),
            E::Numeric(_) => CliError::Numeric(e.to_string()),
            E::InvalidArgument(_) | E::OutOfRange(_) => CliError::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
