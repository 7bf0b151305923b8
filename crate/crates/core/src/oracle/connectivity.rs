//! Separations and k-connectivity by exhaustive search over small cuts.

use crate::graph::{Graph, VertexSet};

use super::bits::{self, BitGraph};
use super::OracleError;

/// `(A, B)` with `A u B = V`, both differences nonempty and no edge between
/// `A - B` and `B - A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Separation {
    pub a: VertexSet,
    pub b: VertexSet,
}

impl Separation {
    pub fn order(&self) -> usize {
        self.a.intersection(&self.b).count()
    }

    /// Checks the defining conditions against `g`.
    pub fn is_valid(&self, g: &Graph) -> bool {
        let union: VertexSet = self.a.union(&self.b).copied().collect();
        let a_only: VertexSet = self.a.difference(&self.b).copied().collect();
        let b_only: VertexSet = self.b.difference(&self.a).copied().collect();
        union == g.vertex_set()
            && !a_only.is_empty()
            && !b_only.is_empty()
            && a_only.iter().all(|&u| g.neighbors(u).all(|w| !b_only.contains(&w)))
    }
}

/// A separation of least order, if `g` has any (complete graphs have none).
pub fn min_separation(g: &Graph) -> Result<Option<Separation>, OracleError> {
    min_separation_below(g, g.vertex_count())
}

fn min_separation_below(g: &Graph, bound: usize) -> Result<Option<Separation>, OracleError> {
    let bg = BitGraph::from_graph(g)?;
    let n = bg.n();
    let all = bits::full(n);
    for size in 0..bound.min(n.saturating_sub(1)) {
        for cut in bits::subsets(n, size) {
            let rest = all & !cut;
            let first = bits::component_of_lowest(&bg.adj, rest);
            if first != rest {
                return Ok(Some(Separation {
                    a: bg.to_set(cut | first),
                    b: bg.to_set(all & !first),
                }));
            }
        }
    }
    Ok(None)
}

/// Whether `g` has at least `k + 1` vertices and no separation of order
/// below `k`. A failing graph comes with a least-order separation when one
/// of order below `k` exists.
pub fn is_k_connected(g: &Graph, k: usize) -> Result<(bool, Option<Separation>), OracleError> {
    if let Some(sep) = min_separation_below(g, k)? {
        return Ok((false, Some(sep)));
    }
    Ok((g.vertex_count() > k, None))
}
