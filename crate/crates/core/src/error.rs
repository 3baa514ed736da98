use thiserror::Error;

use crate::graph::Vertex;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Structurally malformed input (bad edge list, unknown vertex, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The rotation system does not describe a valid embedding.
    #[error("invalid embedding: {0}")]
    EmbeddingInvalid(String),

    #[error("graph is not 2-connected: {0}")]
    NotTwoConnected(String),

    /// An operation was called outside its domain.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A claimed Alon-Tarsi witness failed re-validation. On valid input
    /// this indicates a bug.
    #[error("certificate violation: {0}")]
    CertificateViolation(String),

    #[error("{what} exceeds cap ({size} > {cap})")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn unknown_vertex(v: Vertex) -> Self {
        Error::InvalidInput(format!("unknown vertex {v}"))
    }
}
