use std::io;
use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum SimError {
    #[error("{0}")]
    Parameter(String),
    #[error(transparent)]
    Code(#[from] pac_core::Error),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("output error: {0}")]
    Output(#[source] io::Error),
    #[error("loopback check failed: {0}")]
    CheckFailed(String),
}

impl SimError {
    pub fn param(msg: impl Into<String>) -> Self {
        SimError::Parameter(msg.into())
    }

    /// Process exit status: 2 for parameter errors, 3 for I/O errors and 1
    /// for a failed self-check.
    pub fn exit_code(&self) -> i32 {
        match self {
            SimError::Parameter(_) | SimError::Code(_) => 2,
            SimError::Io { .. } | SimError::Output(_) => 3,
            SimError::CheckFailed(_) => 1,
        }
    }
}

impl From<csv::Error> for SimError {
    fn from(e: csv::Error) -> Self {
        SimError::Output(e.into())
    }
}

impl From<serde_json::Error> for SimError {
    fn from(e: serde_json::Error) -> Self {
        SimError::Output(e.into())
    }
}

pub type Result<T> = std::result::Result<T, SimError>;
