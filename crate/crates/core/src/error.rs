use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A precondition on a numeric argument was violated.
    #[error("domain error: {0}")]
    Domain(String),
    /// Textual input could not be parsed or violates a representation invariant.
    #[error("format error: {0}")]
    Format(String),
    /// The window map has conflicting observations, so it is not a function.
    #[error("window map has {count} conflict witness(es); use oracle mode")]
    ThetaConflicted { count: usize },
    /// Iteration reached a window the map was never sampled on.
    #[error("window map undefined at step {step} (window {window})")]
    ThetaIncomplete { step: u64, window: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn format(msg: impl Into<String>) -> Error {
    Error::Format(msg.into())
}
