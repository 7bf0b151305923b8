//! Exhaustive densest-minor, densest-subgraph and minor-containment search.
//!
//! A model can always be grown until it covers every vertex of each
//! component it touches without losing realized pattern edges, so the minor
//! search enumerates partitions of unions of whole components into exactly
//! `t` connected blocks.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use crate::graph::{Graph, VertexId, VertexSet};
use crate::model::MinorModel;

use super::bits::{self, BitGraph};
use super::OracleError;

/// Largest host accepted by the partition search.
pub const MINOR_SEARCH_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Model(MinorModel),
    Vertices(VertexSet),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub optimum: usize,
    pub witness: Witness,
    /// Candidates evaluated.
    pub explored: u64,
    /// Whether `optimum` is certified maximal.
    pub exhaustive: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Stop as soon as a candidate reaches this value.
    pub target: Option<usize>,
    pub workers: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            target: None,
            workers: 1,
        }
    }
}

fn pairs(t: usize) -> usize {
    t * t.saturating_sub(1) / 2
}

/// One unit of partition work: the kept vertex set and the block labels of
/// its first few vertices.
#[derive(Debug, Clone)]
struct Task {
    kept: Vec<usize>,
    prefix: Vec<usize>,
}

fn tasks(adj: &[u64], t: usize) -> Vec<Task> {
    let comps = bits::components(adj, bits::full(adj.len()));
    let (big, single): (Vec<u64>, Vec<u64>) = comps.into_iter().partition(|c| c.count_ones() > 1);
    let mut out = Vec::new();
    for sub in 0u64..(1 << big.len()) {
        let base = bits::bits(sub).fold(0, |acc, i| acc | big[i]);
        for j in 0..=single.len() {
            let kept = single[..j].iter().fold(base, |acc, s| acc | s);
            let pieces = sub.count_ones() as usize + j;
            if kept == 0 || (kept.count_ones() as usize) < t || pieces > t {
                continue;
            }
            let kept: Vec<usize> = bits::bits(kept).collect();
            let depth = kept.len().min(3);
            let mut prefix = Vec::new();
            prefixes(&kept, t, depth, 0, &mut prefix, &mut out);
        }
    }
    out
}

fn prefixes(kept: &[usize], t: usize, depth: usize, used: usize, cur: &mut Vec<usize>, out: &mut Vec<Task>) {
    let i = cur.len();
    if i == depth {
        out.push(Task {
            kept: kept.to_vec(),
            prefix: cur.clone(),
        });
        return;
    }
    for b in 0..=used.min(t - 1) {
        let now = used.max(b + 1);
        if kept.len() - (i + 1) + now < t {
            continue;
        }
        cur.push(b);
        prefixes(kept, t, depth, now, cur, out);
        cur.pop();
    }
}

struct Walk<'a, F: FnMut(&[u64]) -> bool> {
    adj: &'a [u64],
    kept: &'a [usize],
    t: usize,
    blocks: Vec<u64>,
    explored: u64,
    visit: F,
}

impl<F: FnMut(&[u64]) -> bool> Walk<'_, F> {
    /// Returns true when the visitor asks to stop.
    fn run(&mut self, i: usize, used: usize) -> bool {
        if i == self.kept.len() {
            if used != self.t || !self.blocks.iter().all(|&b| bits::is_connected(self.adj, b)) {
                return false;
            }
            self.explored += 1;
            return (self.visit)(&self.blocks);
        }
        let v = self.kept[i];
        for b in 0..=used.min(self.t - 1) {
            let now = used.max(b + 1);
            if self.kept.len() - (i + 1) + now < self.t {
                continue;
            }
            self.blocks[b] |= 1 << v;
            let stop = self.run(i + 1, now);
            self.blocks[b] &= !(1 << v);
            if stop {
                return true;
            }
        }
        false
    }
}

/// Runs `visit` over every partition in the task; stops when it returns true.
fn run_task<F: FnMut(&[u64]) -> bool>(adj: &[u64], task: &Task, t: usize, visit: F) -> (bool, u64) {
    let mut walk = Walk {
        adj,
        kept: &task.kept,
        t,
        blocks: vec![0; t],
        explored: 0,
        visit,
    };
    let mut used = 0;
    for (i, &b) in task.prefix.iter().enumerate() {
        walk.blocks[b] |= 1 << task.kept[i];
        used = used.max(b + 1);
    }
    let stop = walk.run(task.prefix.len(), used);
    (stop, walk.explored)
}

/// Number of block pairs joined by at least one edge.
pub(crate) fn realized(adj: &[u64], blocks: &[u64]) -> usize {
    let nbrs: Vec<u64> = blocks.iter().map(|&b| bits::neighbours_of(adj, b)).collect();
    nbrs.iter()
        .enumerate()
        .map(|(a, n)| blocks[a + 1..].iter().filter(|&&b| n & b != 0).count())
        .sum()
}

/// Adjacency of the graph on blocks realized by the partition.
fn quotient(adj: &[u64], blocks: &[u64]) -> Vec<u64> {
    let nbrs: Vec<u64> = blocks.iter().map(|&b| bits::neighbours_of(adj, b)).collect();
    let mut q = vec![0u64; blocks.len()];
    for (a, n) in nbrs.iter().enumerate() {
        for (b, block) in blocks.iter().enumerate().skip(a + 1) {
            if n & block != 0 {
                q[a] |= 1 << b;
                q[b] |= 1 << a;
            }
        }
    }
    q
}

/// Score and blocks of the best partition seen so far.
type Best = Option<(usize, Vec<u64>)>;

struct Outcome {
    best: Best,
    explored: u64,
}

/// Best partition under `score`, ties to the first in enumeration order,
/// stopping at the first partition scoring at least `goal`. The result does
/// not depend on `workers`.
fn best_partition<S>(adj: &[u64], t: usize, goal: usize, workers: usize, score: S) -> Outcome
where
    S: Fn(&[u64]) -> usize + Sync,
{
    let all = tasks(adj, t);
    let cutoff = AtomicUsize::new(usize::MAX);
    let results: Mutex<Vec<(usize, Best, u64)>> = Mutex::new(Vec::new());
    let work = |w: usize, stride: usize| {
        for (idx, task) in all.iter().enumerate().skip(w).step_by(stride) {
            if idx > cutoff.load(Ordering::SeqCst) {
                break;
            }
            let mut best: Best = None;
            let (hit, explored) = run_task(adj, task, t, |blocks| {
                let s = score(blocks);
                if best.as_ref().is_none_or(|(b, _)| s > *b) {
                    best = Some((s, blocks.to_vec()));
                }
                s >= goal
            });
            if hit {
                cutoff.fetch_min(idx, Ordering::SeqCst);
            }
            results.lock().unwrap().push((idx, best, explored));
        }
    };
    let workers = workers.max(1).min(all.len().max(1));
    if workers == 1 {
        work(0, 1);
    } else {
        std::thread::scope(|s| {
            for w in 0..workers {
                let work = &work;
                s.spawn(move || work(w, workers));
            }
        });
    }
    let cut = cutoff.into_inner();
    let mut results = results.into_inner().unwrap();
    results.retain(|r| r.0 <= cut);
    results.sort_by_key(|r| r.0);
    let mut out = Outcome {
        best: None,
        explored: 0,
    };
    for (_, best, explored) in results {
        out.explored += explored;
        if let Some((s, blocks)) = best {
            if out.best.as_ref().is_none_or(|(b, _)| s > *b) {
                out.best = Some((s, blocks));
            }
        }
    }
    out
}

fn model_from_blocks(g: &BitGraph, blocks: &[u64]) -> MinorModel {
    MinorModel::from_sets(blocks.iter().map(|&b| g.to_set(b)))
}

fn check_size(g: &Graph, t: usize, limit: usize) -> Result<BitGraph, OracleError> {
    let n = g.vertex_count();
    if n > limit {
        return Err(OracleError::TooLarge { vertices: n, limit });
    }
    if n < t {
        return Err(OracleError::TooFewVertices { vertices: n, t });
    }
    BitGraph::from_graph(g)
}

/// Most pattern edges realized by a model with `t` branch sets.
pub fn max_minor_edges(g: &Graph, t: usize) -> Result<SearchResult, OracleError> {
    max_minor_edges_with(g, t, SearchOptions::default())
}

pub fn max_minor_edges_with(g: &Graph, t: usize, opts: SearchOptions) -> Result<SearchResult, OracleError> {
    let bg = check_size(g, t, MINOR_SEARCH_LIMIT)?;
    if t == 0 {
        return Ok(SearchResult {
            optimum: 0,
            witness: Witness::Model(MinorModel::default()),
            explored: 1,
            exhaustive: true,
        });
    }
    let top = pairs(t);
    let goal = opts.target.unwrap_or(top).min(top);
    let out = best_partition(&bg.adj, t, goal, opts.workers, |b| realized(&bg.adj, b));
    let (optimum, blocks) = out.best.expect("v(G) >= t admits a partition");
    Ok(SearchResult {
        exhaustive: optimum == top || optimum < goal,
        optimum,
        witness: Witness::Model(model_from_blocks(&bg, &blocks)),
        explored: out.explored,
    })
}

/// Whether some `t`-block model realizes at least `target` edges. Works
/// directly on adjacency masks.
pub(crate) fn minor_reaches(adj: &[u64], t: usize, target: usize) -> bool {
    if t == 0 || adj.len() < t {
        return target == 0 && adj.len() >= t;
    }
    let out = best_partition(adj, t, target, 1, |b| realized(adj, b));
    out.best.is_some_and(|(s, _)| s >= target)
}

/// Most edges in a `t`-vertex induced subgraph.
pub fn max_subgraph_edges(g: &Graph, t: usize) -> Result<SearchResult, OracleError> {
    max_subgraph_edges_with(g, t, SearchOptions::default())
}

pub fn max_subgraph_edges_with(g: &Graph, t: usize, opts: SearchOptions) -> Result<SearchResult, OracleError> {
    let bg = check_size(g, t, 64)?;
    let goal = opts.target.unwrap_or(pairs(t)).min(pairs(t));
    let mut best: Option<(usize, u64)> = None;
    let mut explored = 0;
    for mask in bits::subsets(bg.n(), t) {
        explored += 1;
        let e = bits::edges_in(&bg.adj, mask) as usize;
        if best.is_none_or(|(b, _)| e > b) {
            best = Some((e, mask));
        }
        if e >= goal {
            break;
        }
    }
    let (optimum, mask) = best.expect("v(G) >= t");
    Ok(SearchResult {
        exhaustive: optimum == pairs(t) || optimum < goal,
        optimum,
        witness: Witness::Vertices(bg.to_set(mask)),
        explored,
    })
}

/// Whether some `t`-subset spans at least `target` edges.
pub(crate) fn dense_subset_exists(adj: &[u64], t: usize, target: usize) -> bool {
    bits::subsets(adj.len(), t).any(|m| bits::edges_in(adj, m) as usize >= target)
}

/// Injective map from pattern vertices to host vertices preserving edges.
pub(crate) fn embed(pattern: &[u64], host: &[u64]) -> Option<Vec<usize>> {
    let k = pattern.len();
    if k > host.len() {
        return None;
    }
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(pattern[v].count_ones()), v));
    let mut image = vec![usize::MAX; k];
    fn go(i: usize, order: &[usize], pattern: &[u64], host: &[u64], image: &mut [usize], used: u64) -> bool {
        if i == order.len() {
            return true;
        }
        let p = order[i];
        let need = pattern[p].count_ones();
        for h in 0..host.len() {
            if used >> h & 1 == 1 || host[h].count_ones() < need {
                continue;
            }
            let fits = bits::bits(pattern[p]).all(|q| image[q] == usize::MAX || host[h] >> image[q] & 1 == 1);
            if !fits {
                continue;
            }
            image[p] = h;
            if go(i + 1, order, pattern, host, image, used | 1 << h) {
                return true;
            }
            image[p] = usize::MAX;
        }
        false
    }
    go(0, &order, pattern, host, &mut image, 0).then_some(image)
}

/// A copy of `h` in `g` as a map from `h`'s ids to `g`'s ids.
pub fn find_subgraph(g: &Graph, h: &Graph) -> Result<Option<BTreeMap<VertexId, VertexId>>, OracleError> {
    let bg = BitGraph::from_graph(g)?;
    let bh = BitGraph::from_graph(h)?;
    Ok(embed(&bh.adj, &bg.adj).map(|image| {
        image
            .iter()
            .enumerate()
            .map(|(p, &x)| (bh.ids[p], bg.ids[x]))
            .collect()
    }))
}

/// A model of `h` in `g`, keyed by `h`'s vertex ids, if one exists.
pub fn has_minor(g: &Graph, h: &Graph) -> Result<Option<MinorModel>, OracleError> {
    let t = h.vertex_count();
    if t == 0 {
        return Err(OracleError::EmptyPattern);
    }
    if g.vertex_count() < t {
        return Ok(None);
    }
    let bg = check_size(g, t, MINOR_SEARCH_LIMIT)?;
    let bh = BitGraph::from_graph(h)?;
    let needed = h.edge_count();
    let out = best_partition(&bg.adj, t, 1, 1, |blocks| {
        if realized(&bg.adj, blocks) < needed {
            return 0;
        }
        usize::from(embed(&bh.adj, &quotient(&bg.adj, blocks)).is_some())
    });
    let Some((1, blocks)) = out.best else {
        return Ok(None);
    };
    let image = embed(&bh.adj, &quotient(&bg.adj, &blocks)).expect("embedding found before");
    Ok(Some(MinorModel::new(
        image
            .iter()
            .enumerate()
            .map(|(p, &b)| (bh.ids[p], bg.to_set(blocks[b])))
            .collect(),
    )))
}
