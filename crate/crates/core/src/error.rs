use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("ambient dimension mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },

    #[error("polynomial is not symmetric in group {group:?}: swapping roots {first} and {second} changes it")]
    NotSymmetric {
        group: String,
        first: usize,
        second: usize,
    },

    #[error("unsupported input: {0}")]
    Unsupported(String),

    /// Intersection data that cannot come from a smooth surface or curve.
    #[error("inconsistent context: {0}")]
    InconsistentContext(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    /// An internal identity that must hold did not.
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
