//! Bitmask adjacency for hosts of at most 64 vertices.

use crate::graph::{Graph, VertexId, VertexSet};

use super::OracleError;

/// Host graph relabeled to `0..n`, one adjacency mask per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitGraph {
    pub adj: Vec<u64>,
    /// Original id of each compact index.
    pub ids: Vec<VertexId>,
}

impl BitGraph {
    pub fn from_graph(g: &Graph) -> Result<Self, OracleError> {
        let n = g.vertex_count();
        if n > 64 {
            return Err(OracleError::TooLarge { vertices: n, limit: 64 });
        }
        let ids: Vec<VertexId> = g.vertices().collect();
        let index = |v: VertexId| ids.binary_search(&v).expect("known vertex");
        let mut adj = vec![0u64; n];
        for (u, v) in g.edges() {
            let (a, b) = (index(u), index(v));
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
        Ok(Self { adj, ids })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn to_set(&self, mask: u64) -> VertexSet {
        bits(mask).map(|i| self.ids[i]).collect()
    }
}

/// Indices of the set bits of `mask`, ascending.
pub fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

pub fn full(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Number of edges with both ends in `mask`.
pub fn edges_in(adj: &[u64], mask: u64) -> u32 {
    bits(mask).map(|v| (adj[v] & mask).count_ones()).sum::<u32>() / 2
}

/// Union of the neighbourhoods of the vertices in `mask`.
pub fn neighbours_of(adj: &[u64], mask: u64) -> u64 {
    bits(mask).fold(0, |acc, v| acc | adj[v])
}

/// The component of `G[within]` containing the lowest vertex of `within`.
pub fn component_of_lowest(adj: &[u64], within: u64) -> u64 {
    if within == 0 {
        return 0;
    }
    let mut reach = within & within.wrapping_neg();
    loop {
        let next = (reach | neighbours_of(adj, reach)) & within;
        if next == reach {
            return reach;
        }
        reach = next;
    }
}

pub fn is_connected(adj: &[u64], mask: u64) -> bool {
    mask != 0 && component_of_lowest(adj, mask) == mask
}

/// Components of `G[within]`, ordered by lowest vertex.
pub fn components(adj: &[u64], mut within: u64) -> Vec<u64> {
    let mut out = Vec::new();
    while within != 0 {
        let c = component_of_lowest(adj, within);
        out.push(c);
        within &= !c;
    }
    out
}

/// Next mask with the same popcount (Gosper's hack); `None` past `limit` bits.
pub fn next_same_popcount(x: u64, limit: usize) -> Option<u64> {
    if x == 0 {
        return None;
    }
    let c = x & x.wrapping_neg();
    let r = x.checked_add(c)?;
    let next = (((r ^ x) >> 2) / c) | r;
    (limit >= 64 || next >> limit == 0).then_some(next)
}

/// All `k`-subsets of `0..n` as masks, in increasing numeric order.
pub fn subsets(n: usize, k: usize) -> impl Iterator<Item = u64> {
    let first = if k > n { None } else { Some(full(k)) };
    std::iter::successors(first, move |&x| if k == 0 { None } else { next_same_popcount(x, n) })
}
