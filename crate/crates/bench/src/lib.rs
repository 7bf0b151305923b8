//! Fixtures shared by the benchmarks.

use minorkit::constructions::{self, Attachment, CockadeSpec};
use minorkit::rational::from_usize;
use minorkit::{Graph, VertexId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `G(n, p)` topped up with random edges until the average degree reaches `t`.
pub fn dense_random(seed: u64, n: usize, p: f64, t: usize) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::empty(n);
    for u in 0..n as VertexId {
        for v in u + 1..n as VertexId {
            if rng.gen_bool(p) {
                g.insert_edge(u, v).unwrap();
            }
        }
    }
    while g.avg_degree() < from_usize(t) {
        let u = rng.gen_range(0..n as VertexId);
        let v = rng.gen_range(0..n as VertexId);
        if u != v && !g.has_edge(u, v) {
            g.insert_edge(u, v).unwrap();
        }
    }
    g
}

/// The 8-vertex cockade of two `K5^-` glued along an edge.
pub fn k5_minus_pair() -> Graph {
    constructions::cockade(&CockadeSpec {
        base: constructions::k5_minus(),
        k: 2,
        copies: 2,
        attachment: Attachment::Star,
    })
    .expect("valid cockade")
}
