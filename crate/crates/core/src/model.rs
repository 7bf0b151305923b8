//! Minor models (branch-set certificates) and replayable contraction traces.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::GraphError;
use crate::graph::{Graph, VertexId, VertexSet};

pub type PatternId = u32;

/// A family of branch sets in a host graph, one per pattern vertex.
///
/// The model does not own its host; every check takes the host explicitly.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MinorModel {
    pub branch_sets: BTreeMap<PatternId, VertexSet>,
}

/// First condition a model fails, with its witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelViolation {
    EmptyBranchSet { pattern: PatternId },
    UnknownHostVertex { pattern: PatternId, vertex: VertexId },
    Overlap { first: PatternId, second: PatternId, vertex: VertexId },
    Disconnected { pattern: PatternId },
    UnknownPattern { pattern: PatternId },
    MissingEdge { first: PatternId, second: PatternId },
}

impl fmt::Display for ModelViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::EmptyBranchSet { pattern } => write!(f, "branch set {pattern} is empty"),
            Self::UnknownHostVertex { pattern, vertex } => {
                write!(f, "branch set {pattern} names vertex {vertex}, absent from the host")
            }
            Self::Overlap { first, second, vertex } => {
                write!(f, "branch sets {first} and {second} share vertex {vertex}")
            }
            Self::Disconnected { pattern } => {
                write!(f, "branch set {pattern} does not induce a connected subgraph")
            }
            Self::UnknownPattern { pattern } => {
                write!(f, "pattern vertex {pattern} has no branch set")
            }
            Self::MissingEdge { first, second } => {
                write!(f, "no host edge between branch sets {first} and {second}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelCheck {
    Valid,
    Invalid(ModelViolation),
}

impl ModelCheck {
    pub fn is_valid(&self) -> bool {
        matches!(self, ModelCheck::Valid)
    }
}

impl MinorModel {
    pub fn new(branch_sets: BTreeMap<PatternId, VertexSet>) -> Self {
        Self { branch_sets }
    }

    /// Branch sets listed in order, labelled `0..k`.
    pub fn from_sets(sets: impl IntoIterator<Item = VertexSet>) -> Self {
        Self {
            branch_sets: sets
                .into_iter()
                .enumerate()
                .map(|(i, s)| (i as PatternId, s))
                .collect(),
        }
    }

    /// Every vertex of `vertices` as its own branch set, labelled `0..k` in
    /// ascending id order.
    pub fn singletons(vertices: &VertexSet) -> Self {
        Self::from_sets(vertices.iter().map(|&v| VertexSet::from([v])))
    }

    pub fn len(&self) -> usize {
        self.branch_sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.branch_sets.is_empty()
    }

    pub fn covered(&self) -> VertexSet {
        self.branch_sets.values().flatten().copied().collect()
    }

    /// Nonempty, inside the host, pairwise disjoint, connected.
    pub fn check_structure(&self, host: &Graph) -> ModelCheck {
        let mut owner: BTreeMap<VertexId, PatternId> = BTreeMap::new();
        for (&p, set) in &self.branch_sets {
            if set.is_empty() {
                return ModelCheck::Invalid(ModelViolation::EmptyBranchSet { pattern: p });
            }
            for &v in set {
                if !host.contains(v) {
                    return ModelCheck::Invalid(ModelViolation::UnknownHostVertex {
                        pattern: p,
                        vertex: v,
                    });
                }
                if let Some(&first) = owner.get(&v) {
                    return ModelCheck::Invalid(ModelViolation::Overlap {
                        first,
                        second: p,
                        vertex: v,
                    });
                }
                owner.insert(v, p);
            }
        }
        for (&p, set) in &self.branch_sets {
            if !host.is_connected_within(set) {
                return ModelCheck::Invalid(ModelViolation::Disconnected { pattern: p });
            }
        }
        ModelCheck::Valid
    }

    /// Full model check: structure plus at least one host edge between the
    /// branch sets of every required pattern pair.
    pub fn verify(&self, host: &Graph, required: &BTreeSet<(PatternId, PatternId)>) -> ModelCheck {
        if let ModelCheck::Invalid(v) = self.check_structure(host) {
            return ModelCheck::Invalid(v);
        }
        for &(a, b) in required {
            for p in [a, b] {
                if !self.branch_sets.contains_key(&p) {
                    return ModelCheck::Invalid(ModelViolation::UnknownPattern { pattern: p });
                }
            }
            if !self.joined(host, a, b) {
                return ModelCheck::Invalid(ModelViolation::MissingEdge {
                    first: a.min(b),
                    second: a.max(b),
                });
            }
        }
        ModelCheck::Valid
    }

    fn joined(&self, host: &Graph, a: PatternId, b: PatternId) -> bool {
        let (sa, sb) = (&self.branch_sets[&a], &self.branch_sets[&b]);
        let (small, large) = if sa.len() <= sb.len() { (sa, sb) } else { (sb, sa) };
        small.iter().any(|&v| host.neighbors(v).any(|w| large.contains(&w)))
    }

    /// Pattern pairs joined by at least one host edge, i.e. the edges of the
    /// densest pattern this partition realizes.
    pub fn realized_edges(&self, host: &Graph) -> Result<BTreeSet<(PatternId, PatternId)>, GraphError> {
        if let ModelCheck::Invalid(v) = self.check_structure(host) {
            return Err(GraphError::InvalidModel(v.to_string()));
        }
        let mut owner: BTreeMap<VertexId, PatternId> = BTreeMap::new();
        for (&p, set) in &self.branch_sets {
            for &v in set {
                owner.insert(v, p);
            }
        }
        let mut realized = BTreeSet::new();
        for (&p, set) in &self.branch_sets {
            for &v in set {
                for w in host.neighbors(v) {
                    if let Some(&q) = owner.get(&w) {
                        if p < q {
                            realized.insert((p, q));
                        }
                    }
                }
            }
        }
        Ok(realized)
    }

    pub fn edge_count(&self, host: &Graph) -> Result<usize, GraphError> {
        Ok(self.realized_edges(host)?.len())
    }
}

/// One step of a reduction pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum TraceOp {
    Delete { vertex: VertexId },
    /// Contract edge `uv`; the survivor is `min(u, v)`.
    Contract { u: VertexId, v: VertexId },
}

/// Ordered deletions and contractions that turn a host into a minor of it.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContractionTrace {
    pub ops: Vec<TraceOp>,
}

impl ContractionTrace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn push(&mut self, op: TraceOp) {
        self.ops.push(op);
    }

    pub fn extend(&mut self, other: &ContractionTrace) {
        self.ops.extend_from_slice(&other.ops);
    }

    pub fn contractions(&self) -> usize {
        self.ops
            .iter()
            .filter(|op| matches!(op, TraceOp::Contract { .. }))
            .count()
    }

    /// Replays the trace on `host`. Returns the reduced graph and the model
    /// of it in `host`: each surviving vertex maps to the host vertices merged
    /// into it, keyed by the survivor's id.
    pub fn replay(&self, host: &Graph) -> Result<(Graph, MinorModel), GraphError> {
        let mut g = host.clone();
        let mut merged: BTreeMap<VertexId, VertexSet> =
            host.vertices().map(|v| (v, VertexSet::from([v]))).collect();
        for op in &self.ops {
            match *op {
                TraceOp::Delete { vertex } => {
                    g.remove_vertex_mut(vertex)?;
                    merged.remove(&vertex);
                }
                TraceOp::Contract { u, v } => {
                    let keep = g.contract_mut(u, v)?;
                    let gone = if keep == u { v } else { u };
                    let absorbed = merged.remove(&gone).unwrap_or_default();
                    merged.entry(keep).or_default().extend(absorbed);
                }
            }
        }
        Ok((g, MinorModel::new(merged)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(ids: &[VertexId]) -> VertexSet {
        ids.iter().copied().collect()
    }

    fn all_pairs(k: u32) -> BTreeSet<(PatternId, PatternId)> {
        (0..k).flat_map(|a| (a + 1..k).map(move |b| (a, b))).collect()
    }

    fn spoke_model() -> MinorModel {
        MinorModel::from_sets((0..5).map(|i| set(&[i, i + 5])))
    }

    #[test]
    fn singleton_model_of_subgraph_passes() {
        let k5 = Graph::complete(5);
        let model = MinorModel::singletons(&set(&[0, 1, 2, 3]));
        assert!(model.verify(&k5, &all_pairs(4)).is_valid());
        assert_eq!(model.edge_count(&k5).unwrap(), 6);
    }

    #[test]
    fn petersen_spoke_contraction_is_k5() {
        let pet = Graph::petersen();
        let model = spoke_model();
        assert!(model.verify(&pet, &all_pairs(5)).is_valid());
        assert_eq!(model.edge_count(&pet).unwrap(), 10);
    }

    #[test]
    fn disconnected_branch_set_is_named() {
        let c4 = Graph::cycle(4);
        let model = MinorModel::from_sets([set(&[0, 2]), set(&[1])]);
        assert_eq!(
            model.verify(&c4, &BTreeSet::new()),
            ModelCheck::Invalid(ModelViolation::Disconnected { pattern: 0 })
        );
        assert!(model.edge_count(&c4).is_err());
    }

    #[test]
    fn structural_violations() {
        let g = Graph::path(4);
        let overlap = MinorModel::from_sets([set(&[0, 1]), set(&[1, 2])]);
        assert!(matches!(
            overlap.check_structure(&g),
            ModelCheck::Invalid(ModelViolation::Overlap { vertex: 1, .. })
        ));
        let empty = MinorModel::from_sets([set(&[0]), set(&[])]);
        assert_eq!(
            empty.check_structure(&g),
            ModelCheck::Invalid(ModelViolation::EmptyBranchSet { pattern: 1 })
        );
        let unknown = MinorModel::from_sets([set(&[7])]);
        assert!(matches!(
            unknown.check_structure(&g),
            ModelCheck::Invalid(ModelViolation::UnknownHostVertex { vertex: 7, .. })
        ));
        let missing = MinorModel::from_sets([set(&[0]), set(&[3])]);
        assert_eq!(
            missing.verify(&g, &BTreeSet::from([(0, 1)])),
            ModelCheck::Invalid(ModelViolation::MissingEdge { first: 0, second: 1 })
        );
    }

    #[test]
    fn two_sets_without_cross_edge() {
        let g = Graph::complete(3).disjoint_union(&Graph::complete(3));
        let model = MinorModel::from_sets([set(&[0, 1]), set(&[3, 4, 5])]);
        assert_eq!(model.edge_count(&g).unwrap(), 0);
    }

    #[test]
    fn replay_tracks_merged_sets() {
        let g = Graph::cycle(5);
        let mut trace = ContractionTrace::new();
        trace.push(TraceOp::Contract { u: 1, v: 2 });
        trace.push(TraceOp::Delete { vertex: 4 });
        trace.push(TraceOp::Contract { u: 3, v: 1 });
        let (reduced, model) = trace.replay(&g).unwrap();
        assert_eq!(reduced.vertices().collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(model.branch_sets[&1], set(&[1, 2, 3]));
        assert_eq!(model.branch_sets[&0], set(&[0]));
        let required: BTreeSet<_> = reduced.edges().collect();
        assert!(model.verify(&g, &required).is_valid());
        assert_eq!(trace.contractions(), 2);
    }
}
