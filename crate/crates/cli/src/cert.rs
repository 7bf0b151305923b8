//! Stand-alone certificate checker. It shares only the graph container with
//! the extraction code: connectivity, edge recounts and the bound comparison
//! are all redone here.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use minorkit::Graph;
use serde::Deserialize;

#[derive(Debug, Clone, Deserialize)]
pub struct CertificateFile {
    pub t: u64,
    pub bound_num: i64,
    pub bound_den: i64,
    pub achieved: u64,
    pub case_path: String,
    pub model: ModelFile,
}

#[derive(Debug, Clone, Deserialize)]
pub struct ModelFile {
    pub host_vertices: usize,
    pub branch_sets: BTreeMap<u32, Vec<u32>>,
    #[serde(default)]
    pub realized_edges: Vec<[u32; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(String),
}

impl Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass)
    }
}

/// `max(0, 1414213/10^6 - 1 - 24/t) * t(t-1)/2` as a fraction.
fn required_bound(t: u64) -> (i128, i128) {
    let t = t as i128;
    let num = (414_213 * t - 24_000_000).max(0) * t * (t - 1) / 2;
    (num, 1_000_000 * t)
}

fn connected(g: &Graph, set: &BTreeSet<u32>) -> bool {
    let Some(&start) = set.iter().next() else {
        return false;
    };
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for w in g.neighbors(v) {
            if set.contains(&w) && seen.insert(w) {
                queue.push_back(w);
            }
        }
    }
    seen.len() == set.len()
}

pub fn parse_certificate(text: &str) -> Result<CertificateFile, String> {
    serde_json::from_str(text).map_err(|e| format!("malformed certificate: {e}"))
}

/// Re-verifies a certificate against its host graph.
pub fn check_certificate(g: &Graph, cert: &CertificateFile) -> Verdict {
    let fail = |m: String| Verdict::Fail(m);
    let sets = &cert.model.branch_sets;
    if cert.model.host_vertices != g.vertex_count() {
        return fail(format!(
            "host has {} vertices, certificate says {}",
            g.vertex_count(),
            cert.model.host_vertices
        ));
    }
    if sets.len() as u64 != cert.t {
        return fail(format!("{} branch sets for t = {}", sets.len(), cert.t));
    }
    let mut owner: BTreeMap<u32, u32> = BTreeMap::new();
    let mut as_sets: BTreeMap<u32, BTreeSet<u32>> = BTreeMap::new();
    for (&p, members) in sets {
        if members.is_empty() {
            return fail(format!("branch set {p} is empty"));
        }
        let set: BTreeSet<u32> = members.iter().copied().collect();
        if set.len() != members.len() {
            return fail(format!("branch set {p} repeats a vertex"));
        }
        for &v in &set {
            if !g.contains(v) {
                return fail(format!("branch set {p} uses unknown vertex {v}"));
            }
            if let Some(q) = owner.insert(v, p) {
                return fail(format!("vertex {v} lies in branch sets {q} and {p}"));
            }
        }
        if !connected(g, &set) {
            return fail(format!("branch set {p} is not connected"));
        }
        as_sets.insert(p, set);
    }
    let mut realized: BTreeSet<(u32, u32)> = BTreeSet::new();
    for (u, v) in g.edges() {
        if let (Some(&a), Some(&b)) = (owner.get(&u), owner.get(&v)) {
            if a != b {
                realized.insert((a.min(b), a.max(b)));
            }
        }
    }
    if realized.len() as u64 != cert.achieved {
        return fail(format!(
            "certificate claims {} realized edges, recount gives {}",
            cert.achieved,
            realized.len()
        ));
    }
    if !cert.model.realized_edges.is_empty() {
        let listed: BTreeSet<(u32, u32)> = cert
            .model
            .realized_edges
            .iter()
            .map(|[a, b]| (*a.min(b), *a.max(b)))
            .collect();
        if listed != realized {
            return fail("listed realized edges differ from the recount".into());
        }
    }
    if cert.bound_den <= 0 {
        return fail("bound denominator must be positive".into());
    }
    let (num, den) = (cert.bound_num as i128, cert.bound_den as i128);
    if (cert.achieved as i128) * den < num {
        return fail(format!(
            "achieved {} is below the bound {num}/{den}",
            cert.achieved
        ));
    }
    let (need_num, need_den) = required_bound(cert.t);
    if num * need_den < need_num * den {
        return fail(format!(
            "stated bound {num}/{den} is weaker than the guarantee {need_num}/{need_den}"
        ));
    }
    Verdict::Pass
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn required_bound_values() {
        assert_eq!(required_bound(30).0, 0);
        assert_eq!(required_bound(57).0, 0);
        let (n, d) = required_bound(120);
        // 214213/10^6 * 7140
        assert_eq!(n * 1_000_000, 214_213 * 7140 * d);
    }
}
