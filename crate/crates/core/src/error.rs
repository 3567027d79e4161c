use thiserror::Error;

/// Errors raised by the arithmetic kernels and the factorization engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("order mismatch: order {from} does not divide {to}")]
    OrderMismatch { from: u32, to: u32 },
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        message: String,
        line: usize,
        column: usize,
    },
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    /// Resource errors are the only ones a caller can fix by raising a cap.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Resource(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
