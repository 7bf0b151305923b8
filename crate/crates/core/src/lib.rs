//! Dense minors in graphs of large average degree: graph primitives,
//! reduction passes, dense-minor extraction, extremal constructions and
//! exhaustive small-graph oracles.

pub mod constructions;
pub mod error;
pub mod extraction;
pub mod graph;
pub mod io;
pub mod model;
pub mod oracle;
pub mod rational;
pub mod reduction;
#[cfg(test)]
mod testutil;

pub use constructions::{
    cockade, f_bound, line_graph_complete, path_power, s_graph, s_graph_witness, Attachment,
    CockadeSpec, SGraphSpec,
};
pub use error::{FormatError, GraphError, ParseRationalError};
pub use extraction::{
    case2_extract, densify_to_t, extend_to_t, extract_dense_minor, find_dense_seed, sqrt2_lower,
    DensityCertificate, ExtractionError, ExtractionParams, SeedCase, SeedOutcome,
};
pub use graph::{Graph, VertexId, VertexSet};
pub use io::{parse_edge_list, to_edge_list, ModelDocument};
pub use model::{ContractionTrace, MinorModel, ModelCheck, ModelViolation, PatternId, TraceOp};
pub use oracle::{OracleError, SearchResult, Separation, SweepReport};
pub use rational::Rational;
pub use reduction::{mader_reduce, minimalize_vertices, removal_preserves, ReductionResult};
