use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// An operation was called on an input that violates its stated
    /// precondition; the message names the offending object.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Graph file could not be parsed; `line` is 1-based.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// The greedy Hamiltonian-path builder ran out of repair moves.
    /// Carries the vertices placed so far for diagnosis.
    #[error("hamiltonian path repair exhausted after placing {} vertices", placed.len())]
    PathRepair { placed: Vec<u32> },

    /// A structural fact the reduction guarantees for every valid witness
    /// did not hold. Seeing this on a validated input would falsify the
    /// construction, so it is never downgraded to a plain failure.
    #[error("reduction soundness violation: {0}")]
    Soundness(String),

    /// An artifact was produced by an incompatible format version.
    #[error("format version mismatch: expected {expected}, found {found}")]
    VersionMismatch { expected: String, found: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
