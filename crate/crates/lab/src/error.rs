use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Debug, thiserror::Error)]
pub enum LabError {
    /// Input rejected; `invariant` names the first rule it broke.
    #[error("invalid input: invariant `{invariant}` violated: {detail}")]
    Validation { invariant: String, detail: String },
    #[error("unsupported: {0}")]
    Capability(String),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    /// A check or expected verdict did not hold. `case` is the first failing
    /// case, serialized.
    #[error("check failed: {message}")]
    Failure { message: String, case: String },
}

impl LabError {
    pub fn validation(invariant: &str, detail: impl Into<String>) -> Self {
        LabError::Validation {
            invariant: invariant.to_string(),
            detail: detail.into(),
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        LabError::Io {
            path: path.into(),
            source,
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            LabError::Failure { .. } => 1,
            LabError::Validation { .. } => 2,
            LabError::Capability(_) => 3,
            LabError::Io { .. } => 4,
        }
    }
}

impl From<monotone_core::Error> for LabError {
    fn from(e: monotone_core::Error) -> Self {
        match e {
            monotone_core::Error::Validation { invariant, detail } => LabError::Validation {
                invariant: invariant.to_string(),
                detail,
            },
            monotone_core::Error::Capability(msg) => LabError::Capability(msg),
        }
    }
}

impl From<LabError> for ExitCode {
    fn from(e: LabError) -> Self {
        ExitCode::from(e.exit_code())
    }
}

pub type Result<T> = std::result::Result<T, LabError>;
