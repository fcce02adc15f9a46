use thiserror::Error;

/// Errors raised by state algebra, scenario operations and audits.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Malformed object: wrong length, unknown label, degenerate input set.
    #[error("structural error: {0}")]
    Structural(String),
    /// A state carries amplitude a map does not declare.
    #[error("domain error: {0}")]
    Domain(String),
    /// An operation was called on a state that does not meet its precondition.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// A physical or numerical parameter is out of range.
    #[error("invalid parameter: {0}")]
    Parameter(String),
    /// Scenario steps were applied out of order (e.g. emission before pulse 2).
    #[error("sequencing error: {0}")]
    Sequencing(String),
}

pub type Result<T> = std::result::Result<T, Error>;
