use ptosc::ModelError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("{0}")]
    Domain(#[from] ModelError),
    #[error("validation failed: {failed} of {total} checks")]
    ValidationFailed { failed: usize, total: usize },
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::ValidationFailed { .. } => 1,
            CliError::Config(_) | CliError::Io(_) => 2,
            CliError::Domain(_) => 3,
        }
    }
}
