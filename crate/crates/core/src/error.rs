use thiserror::Error;

/// Errors raised by the group, closure and construction routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("{what} requires {required}, above the cap of {cap}")]
    CapExceeded {
        what: String,
        required: u128,
        cap: u128,
    },
    #[error("group is not abelian")]
    NotAbelian,
    #[error("point set is not invariant under the group")]
    NotInvariant,
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    pub(crate) fn cap(what: impl Into<String>, required: u128, cap: u128) -> Self {
        Error::CapExceeded {
            what: what.into(),
            required,
            cap,
        }
    }

    pub(crate) fn invalid(message: impl Into<String>) -> Self {
        Error::InvalidInput(message.into())
    }

    /// Whether this error is a resource cap rather than bad input.
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
