use thiserror::Error;

use crate::graph::VertexId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(VertexId),
    #[error("vertex {0} is already in the graph")]
    DuplicateVertex(VertexId),
    #[error("loop at vertex {0}")]
    Loop(VertexId),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(VertexId, VertexId),
    #[error("{{{0}, {1}}} is not an edge")]
    NotAnEdge(VertexId, VertexId),
    #[error("removing every vertex leaves the null graph")]
    RemovesEverything,
    #[error("invalid minor model: {0}")]
    InvalidModel(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("not a rational number: {0:?} (expected `p/q` or an integer)")]
pub struct ParseRationalError(pub String);

/// Malformed edge-list or JSON input, with the 1-based line where it was detected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    EdgeList { line: usize, message: String },
    #[error("json: {0}")]
    Json(String),
}
