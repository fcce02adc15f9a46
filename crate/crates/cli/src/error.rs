use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(String),
    /// The simulator produced a result physics forbids for a correct evolution.
    #[error("physics assertion failed: {0}")]
    Physics(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::Io(_) => 2,
            CliError::Physics(_) => 3,
        }
    }
}

impl From<eraser_core::Error> for CliError {
    fn from(e: eraser_core::Error) -> Self {
        use eraser_core::Error::*;
        match e {
            Parameter(_) | Structural(_) => CliError::Config(e.to_string()),
            Domain(_) | Precondition(_) | Sequencing(_) => CliError::Physics(e.to_string()),
        }
    }
}
