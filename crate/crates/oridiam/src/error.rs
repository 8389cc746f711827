use crate::graph::{Edge, VertexId};
use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph is not connected")]
    NotConnected,
    #[error("graph has bridges: {}", fmt_edges(.0))]
    HasBridge(Vec<Edge>),
    #[error("instance too large: {size} exceeds limit {limit}")]
    TooLarge { size: usize, limit: usize },
    #[error("vertex set is not dominating (vertex {0} has no dominator)")]
    NotDominating(VertexId),
    #[error("orientation is not strongly connected")]
    NotStrong,
    #[error("edge list is not a directed cycle of the orientation")]
    NotACycle,
    #[error("edge list is not a directed path of the orientation")]
    NotAPath,
    #[error("replacement path through {0:?} is not consistently directed")]
    InconsistentPathDirection(Vec<VertexId>),
    #[error("graph is not a subgraph of the host")]
    NotSubgraph,
    #[error("reduction step no longer matches the pair")]
    StaleStep,
    #[error("required arc {0} -> {1} absent in both the orientation and its reversal")]
    ConventionViolated(VertexId, VertexId),
    #[error("{kind} lift violates its diameter bound: profile {actual:?} exceeds {bound:?}")]
    InequalityViolated {
        kind: String,
        actual: [u32; 3],
        bound: [u32; 3],
    },
    #[error("postcondition failed: {0}")]
    Postcondition(String),
    #[error("unknown graph name: {0}")]
    UnknownName(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

fn fmt_edges(edges: &[Edge]) -> String {
    edges
        .iter()
        .map(|(u, v)| format!("{u}-{v}"))
        .collect::<Vec<_>>()
        .join(", ")
}

pub type Result<T> = std::result::Result<T, Error>;
