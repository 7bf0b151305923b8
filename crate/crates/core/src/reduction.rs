//! Preprocessing passes that take a graph to a minor whose closed
//! neighbourhoods are dense relative to the input's average degree.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::error::GraphError;
use crate::graph::{Graph, VertexId, VertexSet};
use crate::model::{ContractionTrace, TraceOp};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("removal set covers every vertex")]
    RemovesEverything,
    #[error("average degree {avg} is below the target {target}")]
    BelowTarget { avg: String, target: String },
}

/// Output of [`mader_reduce`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionResult {
    pub reduced: Graph,
    pub trace: ContractionTrace,
    /// Average degree of the input, frozen at entry. Every closed
    /// neighbourhood of `reduced` has minimum degree above half of it.
    pub threshold: Rational,
}

/// Number of edges with at least one end in `x`.
pub fn edges_touching(g: &Graph, x: &VertexSet) -> usize {
    let inside = g.edges_within(x);
    let degree_sum: usize = x.iter().map(|&v| g.degree(v)).sum();
    degree_sum - inside
}

/// Whether deleting `x` is guaranteed not to lower the average degree:
/// true iff the `M` edges touching `x` satisfy `M <= d(G)|x|/2`.
pub fn removal_preserves(g: &Graph, x: &VertexSet) -> Result<bool, ReductionError> {
    if let Some(&v) = x.iter().find(|&&v| !g.contains(v)) {
        return Err(GraphError::UnknownVertex(v).into());
    }
    if x.len() >= g.vertex_count() {
        return Err(ReductionError::RemovesEverything);
    }
    // M <= (2e/v)|X|/2  <=>  M v <= e |X|
    let m = edges_touching(g, x) as u128;
    Ok(m * g.vertex_count() as u128 <= g.edge_count() as u128 * x.len() as u128)
}

/// Minimum degree of `G[N[u]]` together with a vertex of `N(u)` attaining it
/// (smallest id on ties). `None` for an isolated `u`.
pub fn closed_neighborhood_min(g: &Graph, u: VertexId) -> Option<(usize, VertexId)> {
    // u is adjacent to all of N[u], so the minimum is attained inside N(u).
    g.neighbors(u)
        .map(|w| (1 + g.common_neighbor_count(u, w), w))
        .min()
}

/// Contraction pass with the threshold frozen at the input's average degree.
pub fn mader_reduce(g: &Graph) -> ReductionResult {
    let threshold = g.avg_degree();
    mader_reduce_at(g, threshold)
}

/// Contraction pass for an explicit threshold `d`: repeatedly delete an
/// isolated vertex, or else contract `uv` for the first `u` (ascending id)
/// with `δ(G[N[u]]) <= d/2`, where `v` minimizes its degree inside `N[u]`.
/// Stops when every closed neighbourhood has minimum degree above `d/2`.
pub fn mader_reduce_at(g: &Graph, threshold: Rational) -> ReductionResult {
    // δ > d/2 over the integers: δ >= floor(d/2) + 1
    let half = threshold.clone() / rational::int(2);
    let need = rational::floor_to_i64(&half).map_or(0, |f| (f + 1).max(0)) as usize;

    let mut h = g.clone();
    let mut trace = ContractionTrace::new();
    // Vertices whose closed neighbourhood is known to pass; only mutations
    // near a vertex can change its status.
    let mut passing: BTreeSet<VertexId> = BTreeSet::new();
    loop {
        let isolated = h.vertices().find(|&x| h.degree(x) == 0);
        if let Some(x) = isolated {
            h.remove_vertex_mut(x).expect("vertex present");
            passing.remove(&x);
            trace.push(TraceOp::Delete { vertex: x });
            continue;
        }
        let mut violation = None;
        for u in h.vertices() {
            if passing.contains(&u) {
                continue;
            }
            let (delta, v) = closed_neighborhood_min(&h, u).expect("no isolated vertices remain");
            if delta >= need {
                passing.insert(u);
            } else {
                violation = Some((u, v));
                break;
            }
        }
        let Some((u, v)) = violation else { break };
        let mut touched = h.closed_neighborhood(u);
        touched.extend(h.closed_neighborhood(v));
        for w in &touched {
            passing.remove(w);
        }
        h.contract_mut(u, v).expect("uv is an edge");
        trace.push(TraceOp::Contract { u, v });
    }
    ReductionResult {
        reduced: h,
        trace,
        threshold,
    }
}

/// Deletes single vertices (lowest id first) while the average degree stays
/// at least `t`. On return `d(G) >= t` and `d(G - u) < t` for every `u`.
pub fn minimalize_vertices(
    g: &Graph,
    t: &Rational,
) -> Result<(Graph, ContractionTrace), ReductionError> {
    if g.avg_degree() < *t {
        return Err(ReductionError::BelowTarget {
            avg: rational::display(&g.avg_degree()),
            target: rational::display(t),
        });
    }
    let mut h = g.clone();
    let mut trace = ContractionTrace::new();
    loop {
        let v = h.vertex_count();
        if v < 2 {
            break;
        }
        // d(G - u) >= t  <=>  deg(u) <= e - t(v-1)/2
        let slack = rational::from_usize(h.edge_count())
            - t.clone() * rational::from_usize(v - 1) / rational::int(2);
        let Some(max_deg) = rational::floor_to_i64(&slack) else {
            break;
        };
        if max_deg < 0 {
            break;
        }
        let found = h.vertices().find(|&u| h.degree(u) as i64 <= max_deg);
        let Some(u) = found else {
            break;
        };
        h.remove_vertex_mut(u).expect("vertex present");
        trace.push(TraceOp::Delete { vertex: u });
    }
    Ok((h, trace))
}
