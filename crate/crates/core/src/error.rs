use alloc::string::String;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An input violated a named invariant (`hermitian`, `unit_trace`, ...).
    #[error("invalid input: {invariant}: {detail}")]
    Validation { invariant: &'static str, detail: String },
    /// The request is well formed but outside what the library supports.
    #[error("unsupported: {0}")]
    Capability(String),
}

impl Error {
    pub(crate) fn validation(invariant: &'static str, detail: impl Into<String>) -> Self {
        Error::Validation {
            invariant,
            detail: detail.into(),
        }
    }

    pub(crate) fn capability(detail: impl Into<String>) -> Self {
        Error::Capability(detail.into())
    }

    /// Name of the violated invariant, if this is a validation error.
    pub fn invariant(&self) -> Option<&'static str> {
        match self {
            Error::Validation { invariant, .. } => Some(invariant),
            Error::Capability(_) => None,
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
