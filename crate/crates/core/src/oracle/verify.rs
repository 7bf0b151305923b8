//! Exhaustive sweeps over labeled small graphs.
//!
//! Every swept property is monotone under adding edges, so within one vertex
//! count a graph passes as soon as some one-edge-smaller graph passed. Only
//! the lowest edge layer and graphs without a passing parent are searched.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use serde::Serialize;

use crate::constructions::{s_graph, SGraphSpec};
use crate::graph::Graph;

use super::bits;
use super::connectivity::is_k_connected;
use super::enumerate::{self, check_cap, EdgeFilter};
use super::search::{dense_subset_exists, find_subgraph, has_minor, minor_reaches};
use super::OracleError;

/// Violations kept verbatim in a report; the rest are only counted.
const KEPT_VIOLATIONS: usize = 100;
/// Largest vertex count whose full edge-mask space fits the pass bitset.
const INHERIT_LIMIT: usize = 8;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub checked: u64,
    pub violations: Vec<String>,
    pub violation_count: u64,
    /// Graphs settled by a direct search.
    pub direct: u64,
    /// Graphs settled through a passing one-edge-smaller graph.
    pub inherited: u64,
    /// Graphs excluded from the claim.
    pub skipped: u64,
    pub runtime_ms: u128,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }

    fn absorb(&mut self, other: SweepReport) {
        self.checked += other.checked;
        self.direct += other.direct;
        self.inherited += other.inherited;
        self.skipped += other.skipped;
        self.violation_count += other.violation_count;
        self.violations.extend(other.violations);
        self.violations.truncate(KEPT_VIOLATIONS);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn describe(n: usize, mask: u64) -> String {
    let pairs = enumerate::pair_table(n);
    let edges: Vec<String> = bits::bits(mask)
        .map(|i| format!("{}-{}", pairs[i].0, pairs[i].1))
        .collect();
    format!("n={n} edges=[{}]", edges.join(" "))
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// Checks every labeled `n`-vertex graph with at least `min_edges` edges.
fn monotone_sweep<S, C>(n: usize, min_edges: usize, workers: usize, skip: S, check: C) -> SweepReport
where
    S: Fn(u64) -> bool + Sync,
    C: Fn(&[u64]) -> bool + Sync,
{
    let pairs = enumerate::pair_table(n);
    let p = pairs.len();
    let inherit = n <= INHERIT_LIMIT;
    let passed: Vec<AtomicU64> = if inherit {
        (0..(1usize << p).div_ceil(64)).map(|_| AtomicU64::new(0)).collect()
    } else {
        Vec::new()
    };
    let is_passed = |m: u64| passed[(m / 64) as usize].load(Ordering::Relaxed) >> (m % 64) & 1 == 1;
    let mark = |m: u64| {
        passed[(m / 64) as usize].fetch_or(1 << (m % 64), Ordering::Relaxed);
    };

    let mut report = SweepReport::default();
    for layer in min_edges..=p {
        let found: Mutex<Vec<(u64, SweepReport)>> = Mutex::new(Vec::new());
        let work = |w: usize, stride: usize| {
            let mut local = SweepReport::default();
            let mut bad = Vec::new();
            let mut adj = vec![0u64; n];
            for (idx, mask) in bits::subsets(p, layer).enumerate() {
                if idx % stride != w {
                    continue;
                }
                if skip(mask) {
                    local.skipped += 1;
                    continue;
                }
                local.checked += 1;
                if inherit && layer > min_edges && bits::bits(mask).any(|b| is_passed(mask & !(1 << b))) {
                    local.inherited += 1;
                    mark(mask);
                    continue;
                }
                local.direct += 1;
                enumerate::fill_adjacency(&pairs, mask, &mut adj);
                if check(&adj) {
                    if inherit {
                        mark(mask);
                    }
                } else {
                    bad.push(mask);
                }
            }
            local.violation_count = bad.len() as u64;
            found.lock().unwrap().push((bad.first().copied().unwrap_or(u64::MAX), local));
            bad
        };
        let workers = workers.max(1);
        let mut bad: Vec<u64> = if workers == 1 {
            work(0, 1)
        } else {
            std::thread::scope(|s| {
                let handles: Vec<_> = (0..workers)
                    .map(|w| {
                        let work = &work;
                        s.spawn(move || work(w, workers))
                    })
                    .collect();
                handles.into_iter().flat_map(|h| h.join().unwrap()).collect()
            })
        };
        bad.sort_unstable();
        for (_, local) in found.into_inner().unwrap() {
            report.absorb(SweepReport {
                violations: Vec::new(),
                ..local
            });
        }
        report
            .violations
            .extend(bad.iter().map(|&m| describe(n, m)));
        report.violations.truncate(KEPT_VIOLATIONS);
    }
    report
}

/// Fewest edges guaranteed in a `t`-vertex minor of a graph with average
/// degree at least `t - 1`, for `2 <= t <= 6`.
pub fn small_case_target(t: usize) -> Option<usize> {
    match t {
        2 => Some(1),
        3 => Some(3),
        4 => Some(5),
        5 => Some(8),
        6 => Some(11),
        _ => None,
    }
}

/// Every graph with `t <= v <= n_max` and `d >= t - 1` has a `t`-vertex
/// minor with at least [`small_case_target`] edges.
pub fn verify_small_cases(t: usize, n_max: usize, workers: Option<usize>) -> Result<SweepReport, OracleError> {
    let target = small_case_target(t)
        .ok_or_else(|| OracleError::Invalid(format!("t must lie in 2..=6, got {t}")))?;
    check_cap(n_max)?;
    let start = Instant::now();
    let workers = workers.unwrap_or_else(default_workers);
    let mut report = SweepReport::default();
    for n in t..=n_max {
        // 2e / n >= t - 1
        let min_edges = ((t - 1) * n).div_ceil(2);
        let part = monotone_sweep(n, min_edges, workers, |_| false, |adj| {
            dense_subset_exists(adj, t, target) || minor_reaches(adj, t, target)
        });
        report.absorb(part);
    }
    report.runtime_ms = start.elapsed().as_millis();
    Ok(report)
}

/// Every graph on at most `n_max` vertices with `e >= 5v/2 - 7/2`, other than
/// `K1`, `K5^-` and `K5`, has a minor on 6 vertices with at least 11 edges.
pub fn verify_extremal11(n_max: usize, workers: Option<usize>) -> Result<SweepReport, OracleError> {
    check_cap(n_max)?;
    let start = Instant::now();
    let workers = workers.unwrap_or_else(default_workers);
    let mut report = SweepReport::default();
    for n in 1..=n_max {
        // 2e >= 5n - 7
        let min_edges = (5 * n).saturating_sub(7).div_ceil(2);
        let exceptional = |mask: u64| n == 1 || (n == 5 && mask.count_ones() >= 9);
        let part = monotone_sweep(n, min_edges, workers, exceptional, |adj| {
            adj.len() >= 6 && (dense_subset_exists(adj, 6, 11) || minor_reaches(adj, 6, 11))
        });
        report.absorb(part);
    }
    report.runtime_ms = start.elapsed().as_millis();
    Ok(report)
}

/// Every 6-vertex graph with at least 12 edges is 3-connected or contains `K5`.
pub fn verify_6v12e_claim() -> Result<SweepReport, OracleError> {
    let start = Instant::now();
    let mut report = SweepReport::default();
    for mask in enumerate::labeled_masks(6, EdgeFilter::at_least(12))? {
        let g = enumerate::graph_from_mask(6, mask);
        let (connected, _) = is_k_connected(&g, 3)?;
        let adj = super::BitGraph::from_graph(&g)?.adj;
        report.checked += 1;
        report.direct += 1;
        if !(connected || dense_subset_exists(&adj, 5, 10)) {
            report.violation_count += 1;
            report.violations.push(describe(6, mask));
        }
    }
    report.runtime_ms = start.elapsed().as_millis();
    Ok(report)
}

/// For each pattern on at most `h_max` vertices (one per isomorphism class),
/// compares minor containment in `host` with subgraph containment.
pub fn compare_minor_subgraph(host: &Graph, h_max: usize) -> Result<SweepReport, OracleError> {
    if h_max > host.vertex_count() {
        return Err(OracleError::Invalid(format!(
            "h_max = {h_max} exceeds the host's {} vertices",
            host.vertex_count()
        )));
    }
    let start = Instant::now();
    let mut report = SweepReport::default();
    for n in 1..=h_max {
        for pattern in enumerate::enumerate_graphs(n, EdgeFilter::all(), true)? {
            let minor = has_minor(host, &pattern)?.is_some();
            let subgraph = find_subgraph(host, &pattern)?.is_some();
            report.checked += 1;
            report.direct += 1;
            if minor != subgraph {
                report.violation_count += 1;
                let mask = enumerate::mask_of(&pattern)?;
                report.violations.push(format!(
                    "{} minor={minor} subgraph={subgraph}",
                    describe(n, mask)
                ));
            }
        }
    }
    report.runtime_ms = start.elapsed().as_millis();
    Ok(report)
}

/// [`compare_minor_subgraph`] on `S_{k,r,s}`, where the two notions agree.
pub fn verify_s_graph_minors(spec: &SGraphSpec, h_max: usize) -> Result<SweepReport, OracleError> {
    let host = s_graph(spec).map_err(|e| OracleError::Invalid(e.to_string()))?;
    compare_minor_subgraph(&host, h_max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn same_counts(a: &SweepReport, b: &SweepReport) -> bool {
        (a.checked, a.direct, a.inherited, a.skipped, a.violation_count, &a.violations)
            == (b.checked, b.direct, b.inherited, b.skipped, b.violation_count, &b.violations)
    }

    #[test]
    fn small_case_sweeps() {
        for (t, n_max) in [(2, 6), (3, 6), (4, 6), (5, 6), (6, 7)] {
            let r = verify_small_cases(t, n_max, Some(1)).unwrap();
            assert!(r.passed(), "t = {t}: {:?}", r.violations);
            assert!(r.checked > 0);
        }
        assert!(verify_small_cases(7, 7, None).is_err());
    }

    #[test]
    fn sweep_finds_planted_failures() {
        // K4 has no 4-vertex minor with more than 6 edges, so asking for 7
        // must fail on every graph.
        let r = monotone_sweep(4, 5, 1, |_| false, |adj| minor_reaches(adj, 4, 7));
        assert_eq!(r.violation_count, 7);
        assert_eq!(r.inherited, 0);
    }

    #[test]
    fn sweeps_ignore_worker_count() {
        let one = verify_small_cases(5, 7, Some(1)).unwrap();
        let three = verify_small_cases(5, 7, Some(3)).unwrap();
        assert!(same_counts(&one, &three));
        let r = monotone_sweep(5, 6, 3, |_| false, |adj| minor_reaches(adj, 5, 10));
        let s = monotone_sweep(5, 6, 1, |_| false, |adj| minor_reaches(adj, 5, 10));
        assert!(same_counts(&r, &s));
        assert!(r.violation_count > 0);
    }

    #[test]
    fn extremal_small() {
        let r = verify_extremal11(6, Some(1)).unwrap();
        assert!(r.passed());
        // K1, K5^- (ten labelings) and K5 are skipped
        assert_eq!(r.skipped, 1 + 10 + 1);
        // 6 vertices, at least 12 edges
        assert_eq!(r.checked, 576);
    }

    #[test]
    fn six_vertex_claim() {
        let r = verify_6v12e_claim().unwrap();
        assert!(r.passed());
        assert_eq!(r.checked, 576);
    }

    #[test]
    fn minor_subgraph_comparison() {
        let r = verify_s_graph_minors(&SGraphSpec::new(2, 2, 2).unwrap(), 4).unwrap();
        assert!(r.passed());
        assert_eq!(r.checked, 1 + 2 + 4 + 11);
        let c6 = compare_minor_subgraph(&Graph::cycle(6), 3).unwrap();
        assert!(!c6.passed());
        assert!(c6.violations.iter().any(|v| v.contains("0-1 0-2 1-2")));
    }
}
