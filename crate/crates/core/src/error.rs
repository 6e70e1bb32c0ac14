use thiserror::Error;

use crate::hypergraph::EdgeId;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid sparsity pattern: {0}")]
    InvalidPattern(String),

    #[error("edge {0} is not a live edge of the hypergraph")]
    UnknownEdge(EdgeId),

    #[error("invalid ordering: {0}")]
    InvalidOrdering(String),

    #[error("invalid heuristic parameter: {0}")]
    InvalidHeuristic(String),

    #[error("hypergraph has {edges} edges; exhaustive search is limited to {limit}")]
    TooManyEdges { edges: usize, limit: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
