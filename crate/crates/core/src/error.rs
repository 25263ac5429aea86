use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("conductor {requested} exceeds the configured maximum {max}")]
    ConductorOverflow { requested: u64, max: u64 },

    #[error("shape error: {0}")]
    Shape(String),

    #[error("group mismatch: {left} vs {right}")]
    GroupMismatch { left: String, right: String },

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("not an injective homomorphism: {0}")]
    NotInjective(String),

    #[error("bound exceeded: {0}")]
    BoundExceeded(String),

    #[error("inexact value in exact mode: {0}")]
    Inexact(String),

    #[error("malformed sector data: {0}")]
    MalformedSectors(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Errors caused by the shape or structure of the input rather than by
    /// the mathematics it describes.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Shape(_)
                | Error::GroupMismatch { .. }
                | Error::InvalidGroup(_)
                | Error::NotInjective(_)
                | Error::Parse(_)
                | Error::MalformedSectors(_)
        )
    }

    pub(crate) fn mismatch(left: impl std::fmt::Display, right: impl std::fmt::Display) -> Self {
        Error::GroupMismatch { left: left.to_string(), right: right.to_string() }
    }
}
