//! Generators for the extremal families: path powers (k-trees), the
//! clique-star graphs `S_{k,r,s}`, cockades and line graphs of complete graphs.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::graph::{Graph, VertexId};
use crate::rational::{self, from_usize, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("invalid parameters: {0}")]
    Invalid(String),
    #[error("base graph has no clique of size {0}")]
    NoClique(usize),
}

fn invalid<T>(msg: impl Into<String>) -> Result<T, ConstructionError> {
    Err(ConstructionError::Invalid(msg.into()))
}

fn choose2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// `P_n^k`: vertices `0..n`, `ij` an edge iff `|i - j| <= k`.
pub fn path_power(n: usize, k: usize) -> Result<Graph, ConstructionError> {
    if n <= k {
        return invalid(format!("path power needs n > k, got n = {n}, k = {k}"));
    }
    let mut g = Graph::empty(n);
    for i in 0..n {
        for j in i + 1..=(i + k).min(n - 1) {
            g.insert_edge(i as VertexId, j as VertexId).expect("fresh edge");
        }
    }
    Ok(g)
}

/// Edge count of any k-tree on `n` vertices.
pub fn k_tree_edges(n: usize, k: usize) -> usize {
    choose2(k) + k * (n - k)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SGraphSpec {
    pub k: usize,
    pub r: usize,
    pub s: usize,
}

impl SGraphSpec {
    pub fn new(k: usize, r: usize, s: usize) -> Result<Self, ConstructionError> {
        if k == 0 || r == 0 || s == 0 {
            return invalid(format!("S_{{k,r,s}} needs k, r, s >= 1, got ({k}, {r}, {s})"));
        }
        Ok(Self { k, r, s })
    }

    pub fn vertex_count(&self) -> usize {
        self.k + self.r * self.s
    }

    pub fn edge_count(&self) -> usize {
        choose2(self.k) + self.r * choose2(self.s) + self.k * self.r * self.s
    }

    pub fn avg_degree(&self) -> Rational {
        from_usize(2 * self.edge_count()) / from_usize(self.vertex_count())
    }
}

/// `S_{k,r,s}`: a universal clique on `0..k` and `r` disjoint `s`-cliques
/// `A_i = k + i*s .. k + (i+1)*s`.
pub fn s_graph(spec: &SGraphSpec) -> Result<Graph, ConstructionError> {
    let spec = SGraphSpec::new(spec.k, spec.r, spec.s)?;
    let n = spec.vertex_count();
    let mut g = Graph::empty(n);
    let k = spec.k as VertexId;
    for c in 0..k {
        for v in c + 1..n as VertexId {
            g.insert_edge(c, v).expect("fresh edge");
        }
    }
    for i in 0..spec.r {
        let start = (spec.k + i * spec.s) as VertexId;
        let end = start + spec.s as VertexId;
        for a in start..end {
            for b in a + 1..end {
                g.insert_edge(a, b).expect("fresh edge");
            }
        }
    }
    Ok(g)
}

/// Largest edge count of a `t`-vertex subgraph of `S_{k,r,s}` when
/// `k + rs >= t >= k`: `C(k,2) + k(t-k) + floor((t-k)/s) C(s,2) + C((t-k) mod s, 2)`.
pub fn f_bound(k: usize, s: usize, t: usize) -> Result<usize, ConstructionError> {
    if t < k {
        return invalid(format!("f(k, s, t) needs t >= k, got k = {k}, t = {t}"));
    }
    if s == 0 {
        return invalid("f(k, s, t) needs s >= 1");
    }
    let rest = t - k;
    Ok(choose2(k) + k * rest + (rest / s) * choose2(s) + choose2(rest % s))
}

/// `S_{k,r,s}` with average degree at least `t`, where `s = max(1, round(t/(2i)))`,
/// `k = ceil((t-s)/2) + 1` and `r` is the least value reaching the target.
pub fn s_graph_witness(t: usize, i: usize) -> Result<SGraphSpec, ConstructionError> {
    if t < 2 || i == 0 {
        return invalid(format!("witness needs t >= 2 and i >= 1, got t = {t}, i = {i}"));
    }
    // round half up of t / 2i
    let s = ((t + i) / (2 * i)).max(1);
    let k = (t - s).div_ceil(2) + 1;
    // d >= t  <=>  r s (s - 1 + 2k - t) >= k (t - k + 1)
    let slope = s - 1 + 2 * k - t;
    let need = k * (t + 1).saturating_sub(k);
    let r = need.div_ceil(s * slope).max(1);
    SGraphSpec::new(k, r, s)
}

/// `K5` minus the edge `01`.
pub fn k5_minus() -> Graph {
    let mut edges = Vec::new();
    for u in 0..5 {
        for v in u + 1..5 {
            if (u, v) != (0, 1) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(5, &edges).expect("valid edges")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Attachment {
    /// Every new copy is glued to the first copy.
    #[default]
    Star,
    /// Every new copy is glued to the previous copy.
    Chain,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CockadeSpec {
    pub base: Graph,
    pub k: usize,
    pub copies: usize,
    pub attachment: Attachment,
}

/// All `k`-cliques of `g`, ordered by descending degree sum, then lexicographically.
pub fn ranked_cliques(g: &Graph, k: usize) -> Vec<Vec<VertexId>> {
    fn grow(g: &Graph, k: usize, current: &mut Vec<VertexId>, out: &mut Vec<Vec<VertexId>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        let start = current.last().map_or(0, |&v| v + 1);
        let candidates: Vec<VertexId> = g.vertices().filter(|&v| v >= start).collect();
        for v in candidates {
            if current.iter().all(|&c| g.has_edge(c, v)) {
                current.push(v);
                grow(g, k, current, out);
                current.pop();
            }
        }
    }
    let mut out = Vec::new();
    grow(g, k, &mut Vec::new(), &mut out);
    let weight = |c: &Vec<VertexId>| c.iter().map(|&v| g.degree(v)).sum::<usize>();
    out.sort_by(|a, b| weight(b).cmp(&weight(a)).then_with(|| a.cmp(b)));
    out
}

/// `(H,k)`-cockade from `copies` copies of `H`. The first copy keeps its ids;
/// each new copy's designated clique (the best-ranked one) is identified with
/// the first copy's designated clique (star) or with the previous copy's
/// second-ranked clique (chain).
pub fn cockade(spec: &CockadeSpec) -> Result<Graph, ConstructionError> {
    if spec.copies == 0 {
        return invalid("cockade needs at least one copy");
    }
    let (h, _) = spec.base.compacted();
    let cliques = ranked_cliques(&h, spec.k);
    let Some(designated) = cliques.first().cloned() else {
        return Err(ConstructionError::NoClique(spec.k));
    };
    let exposed = match spec.attachment {
        Attachment::Star => designated.clone(),
        Attachment::Chain => match cliques.get(1) {
            Some(c) => c.clone(),
            None if spec.copies == 1 => designated.clone(),
            None => return invalid("chain attachment needs two distinct k-cliques"),
        },
    };

    let mut g = h.clone();
    let identity: BTreeMap<VertexId, VertexId> = h.vertices().map(|v| (v, v)).collect();
    let first = identity.clone();
    let mut previous = identity;
    let mut next_id = h.vertex_count() as VertexId;
    for _ in 1..spec.copies {
        let anchor = match spec.attachment {
            Attachment::Star => &first,
            Attachment::Chain => &previous,
        };
        let mut map = BTreeMap::new();
        for (d, e) in designated.iter().zip(&exposed) {
            map.insert(*d, anchor[e]);
        }
        for v in h.vertices() {
            map.entry(v).or_insert_with(|| {
                let id = next_id;
                next_id += 1;
                id
            });
        }
        for v in map.values() {
            if !g.contains(*v) {
                g.insert_vertex(*v).expect("fresh vertex");
            }
        }
        for (a, b) in h.edges() {
            let (x, y) = (map[&a], map[&b]);
            if !g.has_edge(x, y) {
                g.insert_edge(x, y).expect("valid edge");
            }
        }
        previous = map;
    }
    Ok(g)
}

/// Edge count of any `(H,k)`-cockade on `v` vertices.
pub fn cockade_edge_law(h_vertices: usize, h_edges: usize, k: usize, v: usize) -> Rational {
    let denom = from_usize(h_vertices - k);
    let grown = rational::int(v as i64) - rational::int(k as i64);
    let extra = rational::int(v as i64) - rational::int(h_vertices as i64);
    grown / &denom * from_usize(h_edges) - extra / denom * from_usize(choose2(k))
}

/// `L(K_n)`: one vertex per pair `{a,b}` (lexicographic order), adjacent when
/// the pairs share an element.
pub fn line_graph_complete(n: usize) -> Result<Graph, ConstructionError> {
    if n < 2 {
        return invalid(format!("line graph of K_n needs n >= 2, got {n}"));
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let mut g = Graph::empty(pairs.len());
    for (i, p) in pairs.iter().enumerate() {
        for (j, q) in pairs.iter().enumerate().skip(i + 1) {
            if p.0 == q.0 || p.0 == q.1 || p.1 == q.0 || p.1 == q.1 {
                g.insert_edge(i as VertexId, j as VertexId).expect("fresh edge");
            }
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn path_power_examples() {
        let p = path_power(4, 1).unwrap();
        assert_eq!(p, Graph::path(4));
        assert_eq!(path_power(21, 5).unwrap().edge_count(), 90);
        assert!(path_power(3, 3).is_err());
    }

    #[test]
    fn path_power_is_k_tree() {
        for k in 1..6 {
            for n in k + 1..=14 {
                let g = path_power(n, k).unwrap();
                assert_eq!(g.edge_count(), k_tree_edges(n, k));
                // peel simplicial vertices from the top down to K_{k+1}
                let mut h = g.clone();
                for v in (k + 1..n).rev() {
                    let v = v as VertexId;
                    let back: Vec<VertexId> = h.neighbors(v).collect();
                    assert_eq!(back.len(), k);
                    for (i, &a) in back.iter().enumerate() {
                        for &b in &back[i + 1..] {
                            assert!(h.has_edge(a, b));
                        }
                    }
                    h = h.without_vertex(v).unwrap();
                }
                assert_eq!(h, Graph::complete(k + 1));
                let avg = from_usize(2 * k) - from_usize(k * (k + 1)) / from_usize(n);
                assert_eq!(g.avg_degree(), avg);
            }
        }
    }

    #[test]
    fn s_graph_examples() {
        let g = s_graph(&SGraphSpec::new(2, 4, 1).unwrap()).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (6, 9));
        assert_eq!(g.avg_degree(), int(3));
        let g = s_graph(&SGraphSpec::new(2, 4, 2).unwrap()).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (10, 21));
        assert_eq!(g.avg_degree(), ratio(21, 5));
        assert_eq!(s_graph(&SGraphSpec::new(1, 1, 1).unwrap()).unwrap(), Graph::complete(2));
        assert!(SGraphSpec::new(0, 1, 1).is_err());
    }

    #[test]
    fn s_graph_sweep() {
        for k in 1..=10 {
            for s in 1..=10 {
                for r in 1..=10 {
                    if k + r * s > 10 {
                        continue;
                    }
                    let spec = SGraphSpec::new(k, r, s).unwrap();
                    let g = s_graph(&spec).unwrap();
                    assert_eq!(g.edge_count(), spec.edge_count());
                    assert_eq!(g.avg_degree(), spec.avg_degree());
                    for c in 0..k as VertexId {
                        assert_eq!(g.degree(c), g.vertex_count() - 1);
                    }
                }
            }
        }
    }

    #[test]
    fn f_bound_values() {
        assert_eq!(f_bound(2, 1, 4).unwrap(), 5);
        assert_eq!(f_bound(2, 2, 5).unwrap(), 8);
        for k in 0..8 {
            for s in 1..6 {
                assert_eq!(f_bound(k, s, k).unwrap(), choose2(k));
                for t in k..20 {
                    assert!(f_bound(k, s, t).unwrap() <= f_bound(k, s, t + 1).unwrap());
                }
            }
        }
        assert!(f_bound(3, 1, 2).is_err());
    }

    #[test]
    fn witness_parameters() {
        assert_eq!(s_graph_witness(4, 1).unwrap(), SGraphSpec { k: 2, r: 3, s: 2 });
        let w = s_graph_witness(6, 100).unwrap();
        assert_eq!((w.s, w.k), (1, 4));
        for t in 2..40 {
            for i in 1..6 {
                let w = s_graph_witness(t, i).unwrap();
                assert!(w.s - 1 + 2 * w.k > t);
                assert!(w.avg_degree() >= from_usize(t));
                // r is the least value that works
                let smaller = SGraphSpec { r: w.r - 1, ..w };
                assert!(w.r == 1 || smaller.avg_degree() < from_usize(t));
            }
        }
    }

    #[test]
    fn cockade_examples() {
        let spec = |base: Graph, k, copies, attachment| CockadeSpec {
            base,
            k,
            copies,
            attachment,
        };
        let g = cockade(&spec(Graph::complete(4), 1, 2, Attachment::Star)).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (7, 12));

        let g = cockade(&spec(k5_minus(), 2, 2, Attachment::Star)).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (8, 17));
        assert!(g.has_edge(2, 3));
        assert_eq!(ranked_cliques(&k5_minus(), 2)[0], vec![2, 3]);

        let one = cockade(&spec(k5_minus(), 2, 1, Attachment::Chain)).unwrap();
        assert_eq!(one, k5_minus());

        assert_eq!(
            cockade(&spec(Graph::cycle(5), 3, 2, Attachment::Star)),
            Err(ConstructionError::NoClique(3))
        );
    }

    #[test]
    fn cockade_edge_law_sweep() {
        let bases = [
            (Graph::complete(4), 1),
            (Graph::complete(4), 2),
            (Graph::complete(5), 3),
            (k5_minus(), 1),
            (k5_minus(), 2),
            (Graph::complete(5), 2),
        ];
        for (base, k) in &bases {
            for copies in 1..6 {
                for attachment in [Attachment::Star, Attachment::Chain] {
                    let g = cockade(&CockadeSpec {
                        base: base.clone(),
                        k: *k,
                        copies,
                        attachment,
                    })
                    .unwrap();
                    assert_eq!(g.vertex_count(), base.vertex_count() + (copies - 1) * (base.vertex_count() - k));
                    let law = cockade_edge_law(base.vertex_count(), base.edge_count(), *k, g.vertex_count());
                    assert_eq!(from_usize(g.edge_count()), law);
                }
            }
        }
        // e = 8v/3 - 13/3 for (K5-, 2)
        for v in [5, 8, 11, 14] {
            assert_eq!(cockade_edge_law(5, 9, 2, v), ratio(8 * v as i64 - 13, 3));
        }
    }

    #[test]
    fn line_graphs() {
        assert_eq!(line_graph_complete(3).unwrap(), Graph::complete(3));
        let oct = line_graph_complete(4).unwrap();
        assert_eq!((oct.vertex_count(), oct.edge_count()), (6, 12));
        assert!(oct.vertices().all(|v| oct.degree(v) == 4));
        for n in 2..9 {
            let g = line_graph_complete(n).unwrap();
            assert_eq!(g.vertex_count(), choose2(n));
            assert!(g.vertices().all(|v| g.degree(v) == 2 * (n - 2)));
        }
        let l5 = line_graph_complete(5).unwrap();
        assert_eq!(l5.edge_count(), 30);
        assert!(line_graph_complete(1).is_err());
    }
}
