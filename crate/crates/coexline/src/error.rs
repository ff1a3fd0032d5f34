use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter is outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An index is outside the valid range for the object it addresses.
    #[error("index {index} out of range (max {max})")]
    Index { index: usize, max: usize },

    /// Two paths passed to a concatenation do not have compatible lengths.
    #[error("length mismatch: {0}")]
    LengthMismatch(String),

    /// A requested computation exceeds a configured resource cap.
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    /// A linear solve finished but failed its post-hoc residual check.
    #[error("solver failure: {0}")]
    SolverFailure(String),

    /// Two distributions live on different supports.
    #[error("support mismatch: {0}")]
    SupportMismatch(String),

    /// A statistic was requested on an empty sample.
    #[error("empty input: {0}")]
    EmptyInput(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
