use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{module}::{op}: {message}")]
    Validation { module: &'static str, op: &'static str, message: String },
    #[error("{module}::{op}: {message}")]
    GapRefusal { module: &'static str, op: &'static str, message: String },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("invariant suite failed: {0} of 10 checks passed")]
    SuiteFailed(usize),
}

impl CliError {
    pub fn validation(module: &'static str, op: &'static str, message: impl Into<String>) -> Self {
        CliError::Validation { module, op, message: message.into() }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::GapRefusal { .. } => 3,
            CliError::SuiteFailed(_) => 1,
            _ => 2,
        }
    }
}
