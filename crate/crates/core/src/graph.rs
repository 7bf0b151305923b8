//! Simple undirected graphs with stable vertex identities.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::GraphError;
use crate::rational::{self, Rational};

pub type VertexId = u32;
pub type VertexSet = BTreeSet<VertexId>;

/// A finite simple graph.
///
/// Vertex ids survive deletions and contractions unchanged, so sets of ids
/// computed on a reduced graph still name vertices of the original host.
/// Public operations never mutate in place; they return a new graph.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Graph {
    adj: BTreeMap<VertexId, BTreeSet<VertexId>>,
    edges: usize,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Edgeless graph on `0..n`.
    pub fn empty(n: usize) -> Self {
        Self {
            adj: (0..n as VertexId).map(|v| (v, BTreeSet::new())).collect(),
            edges: 0,
        }
    }

    /// Graph on `0..n` with the given edges. Rejects loops, duplicates and
    /// endpoints outside the range.
    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self, GraphError> {
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            g.insert_edge(u, v)?;
        }
        Ok(g)
    }

    /// Like [`Graph::from_edges`] but silently drops duplicate edges.
    pub fn from_edges_dedup(
        n: usize,
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<Self, GraphError> {
        let mut g = Self::empty(n);
        for (u, v) in edges {
            if !g.has_edge(u, v) {
                g.insert_edge(u, v)?;
            }
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for u in 0..n as VertexId {
            for v in u + 1..n as VertexId {
                g.link(u, v);
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Self::empty(n);
        if n >= 3 {
            for i in 0..n as VertexId {
                g.link(i, (i + 1) % n as VertexId);
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Self::empty(n);
        for i in 1..n as VertexId {
            g.link(i - 1, i);
        }
        g
    }

    /// Petersen graph: outer 5-cycle `0..5`, inner pentagram `5..10`,
    /// spokes `i -- i+5`.
    pub fn petersen() -> Self {
        let mut g = Self::empty(10);
        for i in 0..5 {
            g.link(i, (i + 1) % 5);
            g.link(5 + i, 5 + (i + 2) % 5);
            g.link(i, i + 5);
        }
        g
    }

    /// Disjoint union; vertices of `other` are shifted past `self`'s largest id.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.adj.keys().next_back().map_or(0, |&m| m + 1);
        let mut g = self.clone();
        for &v in other.adj.keys() {
            g.adj.insert(v + shift, BTreeSet::new());
        }
        for (u, v) in other.edges() {
            g.link(u + shift, v + shift);
        }
        g
    }

    pub fn insert_vertex(&mut self, v: VertexId) -> Result<(), GraphError> {
        if self.adj.contains_key(&v) {
            return Err(GraphError::DuplicateVertex(v));
        }
        self.adj.insert(v, BTreeSet::new());
        Ok(())
    }

    pub fn insert_edge(&mut self, u: VertexId, v: VertexId) -> Result<(), GraphError> {
        if u == v {
            return Err(GraphError::Loop(u));
        }
        self.require(u)?;
        self.require(v)?;
        if self.has_edge(u, v) {
            return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.link(u, v);
        Ok(())
    }

    fn link(&mut self, u: VertexId, v: VertexId) {
        let fresh = self.adj.entry(u).or_default().insert(v);
        self.adj.entry(v).or_default().insert(u);
        if fresh {
            self.edges += 1;
        }
    }

    fn require(&self, v: VertexId) -> Result<(), GraphError> {
        if self.adj.contains_key(&v) {
            Ok(())
        } else {
            Err(GraphError::UnknownVertex(v))
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn is_null(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.adj.contains_key(&v)
    }

    /// Vertices in ascending id order.
    pub fn vertices(&self) -> impl DoubleEndedIterator<Item = VertexId> + ExactSizeIterator + '_ {
        self.adj.keys().copied()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.adj.keys().copied().collect()
    }

    /// Edges `(u, v)` with `u < v`, lexicographic.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adj
            .iter()
            .flat_map(|(&u, ns)| ns.range(u + 1..).map(move |&v| (u, v)))
    }

    /// Open neighbourhood. Empty for unknown ids.
    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.adj.get(&v).into_iter().flat_map(|ns| ns.iter().copied())
    }

    pub fn neighbor_set(&self, v: VertexId) -> Option<&BTreeSet<VertexId>> {
        self.adj.get(&v)
    }

    pub fn closed_neighborhood(&self, v: VertexId) -> VertexSet {
        let mut set: VertexSet = self.neighbors(v).collect();
        if self.contains(v) {
            set.insert(v);
        }
        set
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj.get(&v).map_or(0, BTreeSet::len)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj.get(&u).is_some_and(|ns| ns.contains(&v))
    }

    /// `|N(u) ∩ N(v)|`, iterating the smaller neighbourhood.
    pub fn common_neighbor_count(&self, u: VertexId, v: VertexId) -> usize {
        let (Some(a), Some(b)) = (self.adj.get(&u), self.adj.get(&v)) else {
            return 0;
        };
        let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
        small.iter().filter(|w| large.contains(w)).count()
    }

    /// Number of neighbours of `v` inside `set`.
    pub fn degree_into(&self, v: VertexId, set: &VertexSet) -> usize {
        let Some(ns) = self.adj.get(&v) else { return 0 };
        if ns.len() <= set.len() {
            ns.iter().filter(|w| set.contains(w)).count()
        } else {
            set.iter().filter(|w| ns.contains(w)).count()
        }
    }

    /// Minimum degree; `None` for the null graph.
    pub fn min_degree(&self) -> Option<usize> {
        self.adj.values().map(BTreeSet::len).min()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.adj.values().map(BTreeSet::len).max()
    }

    /// `2e/v`, defined as 0 on the null graph.
    pub fn avg_degree(&self) -> Rational {
        if self.adj.is_empty() {
            return rational::int(0);
        }
        rational::ratio(2 * self.edges as i64, self.adj.len() as i64)
    }

    /// Number of edges with both ends in `set` (ids outside the graph are ignored).
    pub fn edges_within(&self, set: &VertexSet) -> usize {
        set.iter().map(|&v| self.degree_into(v, set)).sum::<usize>() / 2
    }

    /// Minimum degree of `G[set]`; `None` for the empty set.
    pub fn min_degree_within(&self, set: &VertexSet) -> Option<usize> {
        set.iter().map(|&v| self.degree_into(v, set)).min()
    }

    fn check_subset(&self, set: &VertexSet) -> Result<(), GraphError> {
        match set.iter().find(|v| !self.contains(**v)) {
            Some(&v) => Err(GraphError::UnknownVertex(v)),
            None => Ok(()),
        }
    }

    /// `G[set]`, keeping ids.
    pub fn induced(&self, set: &VertexSet) -> Result<Graph, GraphError> {
        self.check_subset(set)?;
        let mut g = Graph::new();
        let mut twice = 0;
        for &v in set {
            let ns: BTreeSet<VertexId> = self.adj[&v].intersection(set).copied().collect();
            twice += ns.len();
            g.adj.insert(v, ns);
        }
        g.edges = twice / 2;
        Ok(g)
    }

    /// `G - set`.
    pub fn without(&self, set: &VertexSet) -> Result<Graph, GraphError> {
        self.check_subset(set)?;
        let keep: VertexSet = self.adj.keys().filter(|v| !set.contains(v)).copied().collect();
        self.induced(&keep)
    }

    pub fn without_vertex(&self, v: VertexId) -> Result<Graph, GraphError> {
        let mut g = self.clone();
        g.remove_vertex_mut(v)?;
        Ok(g)
    }

    /// `G/uv`. The surviving vertex keeps the smaller id; loops and parallel
    /// edges are dropped, so `e(G/uv) = e(G) - 1 - |N(u) ∩ N(v)|`.
    pub fn contract(&self, u: VertexId, v: VertexId) -> Result<Graph, GraphError> {
        let mut g = self.clone();
        g.contract_mut(u, v)?;
        Ok(g)
    }

    pub(crate) fn remove_vertex_mut(&mut self, v: VertexId) -> Result<(), GraphError> {
        let ns = self.adj.remove(&v).ok_or(GraphError::UnknownVertex(v))?;
        for w in &ns {
            if let Some(set) = self.adj.get_mut(w) {
                set.remove(&v);
            }
        }
        self.edges -= ns.len();
        Ok(())
    }

    /// Contracts `uv` in place and returns the surviving id.
    pub(crate) fn contract_mut(&mut self, u: VertexId, v: VertexId) -> Result<VertexId, GraphError> {
        self.require(u)?;
        self.require(v)?;
        if !self.has_edge(u, v) {
            return Err(GraphError::NotAnEdge(u, v));
        }
        let (keep, gone) = (u.min(v), u.max(v));
        let moved = self.adj.remove(&gone).expect("checked above");
        self.edges -= moved.len();
        for w in moved {
            let set = self.adj.get_mut(&w).expect("neighbour present");
            set.remove(&gone);
            if w != keep {
                self.link(keep, w);
            }
        }
        Ok(keep)
    }

    /// Vertices reachable from `start` inside `within`.
    pub fn component_within(&self, start: VertexId, within: &VertexSet) -> VertexSet {
        let mut seen = VertexSet::new();
        if !within.contains(&start) {
            return seen;
        }
        let mut queue = VecDeque::from([start]);
        seen.insert(start);
        while let Some(x) = queue.pop_front() {
            for y in self.neighbors(x) {
                if within.contains(&y) && seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    /// Whether `G[set]` is connected. The empty set is not.
    pub fn is_connected_within(&self, set: &VertexSet) -> bool {
        match set.iter().next() {
            None => false,
            Some(&s) => self.component_within(s, set).len() == set.len(),
        }
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_within(&self.vertex_set())
    }

    /// Same graph with ids renumbered to `0..v` in ascending order, plus the
    /// old id of each new index.
    pub fn compacted(&self) -> (Graph, Vec<VertexId>) {
        let order: Vec<VertexId> = self.vertices().collect();
        let index: BTreeMap<VertexId, VertexId> = order
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i as VertexId))
            .collect();
        let mut g = Graph::empty(order.len());
        for (u, v) in self.edges() {
            g.link(index[&u], index[&v]);
        }
        (g, order)
    }

    /// Relabels every vertex through `map`, which must be injective on V(G).
    pub fn relabeled(&self, map: impl Fn(VertexId) -> VertexId) -> Result<Graph, GraphError> {
        let mut g = Graph::new();
        for v in self.vertices() {
            g.insert_vertex(map(v))?;
        }
        for (u, v) in self.edges() {
            g.link(map(u), map(v));
        }
        Ok(g)
    }
}
