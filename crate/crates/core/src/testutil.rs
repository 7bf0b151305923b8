use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, VertexId};

/// `G(n, p)` on ids `0..n`.
pub fn gnp(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n as VertexId {
        for v in u + 1..n as VertexId {
            if rng.gen_bool(p) {
                g.insert_edge(u, v).unwrap();
            }
        }
    }
    g
}
