use thiserror::Error;

/// Errors raised by the library.
///
/// `Fault` is reserved for internal-consistency failures: a computed value
/// that contradicts a proven relation or a cross-checking code path.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("field error: {0}")]
    Field(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid code: {0}")]
    InvalidCode(String),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("enumeration guard exceeded: {0}")]
    Guard(String),
    #[error("internal consistency fault: {0}")]
    Fault(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
