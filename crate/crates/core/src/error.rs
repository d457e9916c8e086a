use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A ladder amplitude or weight vanished or turned imaginary.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// |gamma| >= 1 on an algebra whose basis is not finite.
    #[error("squeezing |gamma| = {modulus} must be < 1 for an infinite spectrum")]
    InvalidSqueezing { modulus: f64 },

    #[error("state did not converge before the truncation cap M = {cap}")]
    NonConvergent { cap: usize },

    #[error("recurrence overflowed at n = {index}")]
    Overflow { index: usize },

    #[error("dimension mismatch: expected at most {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid scenario: {0}")]
    Scenario(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NonConvergent { .. } | Error::Overflow { .. } => 3,
            Error::Io(_) => 1,
            _ => 2,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
