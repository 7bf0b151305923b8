//! Exact brute-force engines for desk-scale hosts, small-graph enumeration,
//! and exhaustive sweeps over the small-case claims.

pub mod bits;
pub mod connectivity;
pub mod enumerate;
pub mod search;
pub mod verify;

use thiserror::Error;

use crate::error::GraphError;

pub use bits::BitGraph;
pub use connectivity::{is_k_connected, min_separation, Separation};
pub use enumerate::{canonical_mask, enumerate_graphs, enumeration_cap, EdgeFilter};
pub use search::{
    find_subgraph, has_minor, max_minor_edges, max_minor_edges_with, max_subgraph_edges,
    max_subgraph_edges_with, SearchOptions, SearchResult, Witness,
};
pub use verify::{
    compare_minor_subgraph, small_case_target, verify_6v12e_claim, verify_extremal11,
    verify_s_graph_minors, verify_small_cases, SweepReport,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("host has {vertices} vertices; this search supports at most {limit}")]
    TooLarge { vertices: usize, limit: usize },
    #[error("host has {vertices} vertices, fewer than t = {t}")]
    TooFewVertices { vertices: usize, t: usize },
    #[error("pattern graph is empty")]
    EmptyPattern,
    #[error("n = {n} exceeds the enumeration cap {cap}")]
    EnumerationCap { n: usize, cap: usize },
    #[error("invalid parameters: {0}")]
    Invalid(String),
}
