//! Labeled small-graph enumeration and canonical forms.

use std::collections::BTreeSet;

use crate::graph::{Graph, VertexId};

use super::bits;
use super::OracleError;

/// Environment variable overriding the enumeration cap.
pub const CAP_VAR: &str = "MINORKIT_ENUM_CAP";
pub const DEFAULT_CAP: usize = 8;
/// Edge masks are 64-bit, so `C(n,2) <= 64`.
pub const HARD_CAP: usize = 11;

/// Largest `n` accepted by the enumerators.
pub fn enumeration_cap() -> usize {
    std::env::var(CAP_VAR)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .unwrap_or(DEFAULT_CAP)
        .min(HARD_CAP)
}

pub(crate) fn check_cap(n: usize) -> Result<(), OracleError> {
    let cap = enumeration_cap();
    if n > cap {
        return Err(OracleError::EnumerationCap { n, cap });
    }
    Ok(())
}

/// Vertex pairs of `0..n` in lexicographic order; bit `i` of an edge mask is `pairs[i]`.
pub fn pair_table(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect()
}

/// Fills `adj` with the adjacency masks of the graph encoded by `mask`.
pub fn fill_adjacency(pairs: &[(usize, usize)], mask: u64, adj: &mut [u64]) {
    adj.iter_mut().for_each(|a| *a = 0);
    for i in bits::bits(mask) {
        let (a, b) = pairs[i];
        adj[a] |= 1 << b;
        adj[b] |= 1 << a;
    }
}

pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let pairs = pair_table(n);
    let mut g = Graph::empty(n);
    for i in bits::bits(mask) {
        let (a, b) = pairs[i];
        g.insert_edge(a as VertexId, b as VertexId).expect("fresh edge");
    }
    g
}

/// Edge mask of a graph on ids `0..n`.
pub fn mask_of(g: &Graph) -> Result<u64, OracleError> {
    let (h, _) = g.compacted();
    let n = h.vertex_count();
    if n > HARD_CAP {
        return Err(OracleError::TooLarge { vertices: n, limit: HARD_CAP });
    }
    let pairs = pair_table(n);
    Ok(h.edges()
        .map(|(u, v)| pairs.binary_search(&(u as usize, v as usize)).expect("pair") as u64)
        .fold(0, |acc, i| acc | 1 << i))
}

/// Least edge mask over all relabelings; equal for isomorphic graphs.
pub fn canonical_mask(g: &Graph) -> Result<(usize, u64), OracleError> {
    let (h, _) = g.compacted();
    let n = h.vertex_count();
    if n > DEFAULT_CAP {
        return Err(OracleError::TooLarge { vertices: n, limit: DEFAULT_CAP });
    }
    let pairs = pair_table(n);
    let index = |a: usize, b: usize| {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        a * n - a * (a + 1) / 2 + (b - a - 1)
    };
    let edges: Vec<(usize, usize)> = h.edges().map(|(u, v)| (u as usize, v as usize)).collect();
    let mut perm: Vec<usize> = (0..n).collect();
    let encode = |perm: &[usize]| {
        edges
            .iter()
            .fold(0u64, |acc, &(u, v)| acc | 1 << index(perm[u], perm[v]))
    };
    let mut best = encode(&perm);
    // Heap's algorithm
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            best = best.min(encode(&perm));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    debug_assert!(pairs.len() <= 64);
    Ok((n, best))
}

/// Edge-count window for enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeFilter {
    pub min_edges: usize,
    pub max_edges: usize,
}

impl EdgeFilter {
    pub fn all() -> Self {
        Self {
            min_edges: 0,
            max_edges: usize::MAX,
        }
    }

    pub fn at_least(min_edges: usize) -> Self {
        Self {
            min_edges,
            max_edges: usize::MAX,
        }
    }
}

/// Edge masks of all labeled graphs on `n` vertices within the filter,
/// by increasing edge count and then increasing mask.
pub fn labeled_masks(n: usize, filter: EdgeFilter) -> Result<impl Iterator<Item = u64>, OracleError> {
    check_cap(n)?;
    let p = n * n.saturating_sub(1) / 2;
    let hi = filter.max_edges.min(p);
    let lo = filter.min_edges;
    Ok((lo..=hi).flat_map(move |e| bits::subsets(p, e)))
}

/// All labeled graphs on `n` vertices within the filter, or one
/// representative per isomorphism class (the first in enumeration order).
pub fn enumerate_graphs(
    n: usize,
    filter: EdgeFilter,
    dedupe: bool,
) -> Result<Box<dyn Iterator<Item = Graph>>, OracleError> {
    let masks = labeled_masks(n, filter)?;
    let graphs = masks.map(move |m| graph_from_mask(n, m));
    if !dedupe {
        return Ok(Box::new(graphs));
    }
    let mut seen = BTreeSet::new();
    Ok(Box::new(graphs.filter(move |g| {
        seen.insert(canonical_mask(g).expect("n within cap"))
    })))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_graphs(3, EdgeFilter::all(), false).unwrap().count(), 8);
        assert_eq!(enumerate_graphs(3, EdgeFilter::all(), true).unwrap().count(), 4);
        assert_eq!(enumerate_graphs(4, EdgeFilter::at_least(5), false).unwrap().count(), 7);
        let one: Vec<Graph> = enumerate_graphs(1, EdgeFilter::all(), false).unwrap().collect();
        assert_eq!(one, vec![Graph::complete(1)]);
        let classes: Vec<usize> = (1..=6)
            .map(|n| enumerate_graphs(n, EdgeFilter::all(), true).unwrap().count())
            .collect();
        assert_eq!(classes, vec![1, 2, 4, 11, 34, 156]);
        assert_eq!(enumerate_graphs(6, EdgeFilter::at_least(12), false).unwrap().count(), 576);
    }

    #[test]
    fn canonical_form_is_invariant() {
        let p = Graph::path(5);
        let shuffled = p.relabeled(|v| (v * 3) % 5).unwrap();
        assert_eq!(canonical_mask(&p).unwrap(), canonical_mask(&shuffled).unwrap());
        assert_ne!(canonical_mask(&p).unwrap(), canonical_mask(&Graph::cycle(5)).unwrap());
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            enumerate_graphs(12, EdgeFilter::all(), false),
            Err(OracleError::EnumerationCap { n: 12, .. })
        ));
    }

    #[test]
    fn masks_round_trip() {
        for m in 0..64u64 {
            assert_eq!(mask_of(&graph_from_mask(4, m)).unwrap(), m);
        }
    }
}
