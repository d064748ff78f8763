use thiserror::Error;

/// Errors raised by the library layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum UcfError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),
    #[error("unsupported swarm size {0}")]
    UnsupportedSwarmSize(usize),
}

pub type Result<T> = std::result::Result<T, UcfError>;
