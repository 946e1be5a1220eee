use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Arguments outside the domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A coupling step could not be carried out.
    #[error("construction error: {0}")]
    Construction(String),
    #[error("unsupported coupling path: {0}")]
    UnsupportedPath(String),
    /// Predicted amplitude count exceeds the configured budget.
    #[error("capacity exceeded: predicted {predicted} amplitudes, budget {budget}")]
    Capacity { predicted: String, budget: u64 },
    #[error("arithmetic overflow: {0}")]
    Overflow(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
