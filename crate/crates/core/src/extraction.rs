//! Deterministic extraction of a dense `t`-vertex minor from a graph of
//! average degree at least `t`.
//!
//! Each sampling step is replaced by the method of conditional expectations,
//! and every bound is checked in exact arithmetic before a result is returned.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::error::GraphError;
use crate::graph::{Graph, VertexId, VertexSet};
use crate::model::{ContractionTrace, MinorModel, TraceOp};
use crate::rational::{self, from_usize, int, ratio, Rational};
use crate::reduction::{mader_reduce, minimalize_vertices, ReductionError};

/// Rational just below √2 used for certified bounds.
pub fn sqrt2_under() -> Rational {
    ratio(1_414_213, 1_000_000)
}

/// `r - 1 - 24/t` with `r` the under-approximation of √2.
pub fn sqrt2_lower(t: usize) -> Rational {
    sqrt2_under() - int(1) - ratio(24, t as i64)
}

/// `max(0, sqrt2_lower(t)) * C(t, 2)`.
pub fn guaranteed_bound(t: usize) -> Rational {
    rational::max(int(0), sqrt2_lower(t)) * rational::pairs(t)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtractionParams {
    pub t: usize,
    pub alpha: Rational,
    pub beta: Rational,
    pub nu: Rational,
    /// Degree factor for standalone calls to [`case2_extract`]; the pipeline
    /// passes `nu` or `beta` as appropriate.
    pub lambda: Rational,
}

impl ExtractionParams {
    pub fn new(t: usize) -> Self {
        Self {
            t,
            alpha: ratio(4, 5),
            beta: ratio(6, 5),
            nu: ratio(6, 5),
            lambda: ratio(6, 5),
        }
    }

    pub fn is_default(&self) -> bool {
        let d = Self::new(self.t);
        self.alpha == d.alpha && self.beta == d.beta && self.nu == d.nu
    }

    pub fn validate(&self) -> Result<(), ExtractionError> {
        if self.t == 0 {
            return Err(ExtractionError::Precondition("t must be positive".into()));
        }
        if self.alpha < ratio(1, 2) || self.alpha >= self.beta {
            return Err(ExtractionError::Precondition(format!(
                "need 1/2 <= alpha < beta, got alpha = {}, beta = {}",
                rational::display(&self.alpha),
                rational::display(&self.beta)
            )));
        }
        if self.nu <= int(0) {
            return Err(ExtractionError::Precondition("nu must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SeedCase {
    Case1,
    Case2,
    Case3,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeedOutcome {
    pub case: SeedCase,
    pub x: VertexSet,
    pub y: Option<VertexSet>,
}

impl SeedOutcome {
    /// Checks the invariant of the outcome's case against `g`.
    pub fn check(&self, g: &Graph, params: &ExtractionParams) -> Result<(), String> {
        let t = from_usize(params.t);
        let half_ok = |s: &VertexSet| {
            s.iter().all(|&v| g.contains(v))
                && g.min_degree_within(s).is_some_and(|d| 2 * d >= params.t)
        };
        let size = |s: &VertexSet| from_usize(s.len());
        let alpha_t = params.alpha.clone() * &t;
        let beta_t = params.beta.clone() * &t;
        if !half_ok(&self.x) {
            return Err("delta(G[X]) < t/2".into());
        }
        match self.case {
            SeedCase::Case1 => {
                if self.y.is_some() {
                    return Err("case 1 carries no Y".into());
                }
                if size(&self.x) < alpha_t || size(&self.x) > beta_t {
                    return Err(format!("|X| = {} outside [alpha t, beta t]", self.x.len()));
                }
            }
            SeedCase::Case2 => {
                if self.y.is_some() {
                    return Err("case 2 carries no Y".into());
                }
                if size(&self.x) * int(2) < t || size(&self.x) >= alpha_t {
                    return Err(format!("|X| = {} outside [t/2, alpha t)", self.x.len()));
                }
                let floor = beta_t.clone() - int(1);
                if let Some(u) = g
                    .vertices()
                    .find(|u| !self.x.contains(u) && from_usize(g.degree(*u)) <= floor)
                {
                    return Err(format!("vertex {u} off X has degree <= beta t - 1"));
                }
            }
            SeedCase::Case3 => {
                let Some(y) = &self.y else {
                    return Err("case 3 needs Y".into());
                };
                if !half_ok(y) {
                    return Err("delta(G[Y]) < t/2".into());
                }
                if size(&self.x) >= alpha_t || size(y) >= alpha_t {
                    return Err("|X| or |Y| is at least alpha t".into());
                }
                let union: VertexSet = self.x.union(y).copied().collect();
                if size(&union) <= beta_t {
                    return Err("|X u Y| <= beta t".into());
                }
            }
        }
        Ok(())
    }
}

/// A certified dense minor on `t` pattern vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityCertificate {
    pub t: usize,
    pub model: MinorModel,
    pub achieved_edges: usize,
    pub guaranteed_bound: Rational,
    pub case_path: String,
    pub restarts: usize,
}

impl DensityCertificate {
    /// JSON form: `{"t", "bound_num", "bound_den", "achieved", "case_path", "model"}`.
    pub fn to_json(&self, host: &Graph) -> Result<String, crate::error::FormatError> {
        let model = crate::io::ModelDocument::new(&self.model, host)?;
        let (num, den) = rational::to_parts(&self.guaranteed_bound).ok_or_else(|| {
            crate::error::FormatError::Json("bound does not fit in 64 bits".into())
        })?;
        let value = serde_json::json!({
            "t": self.t,
            "bound_num": num,
            "bound_den": den,
            "achieved": self.achieved_edges,
            "case_path": self.case_path,
            "model": model,
        });
        Ok(serde_json::to_string_pretty(&value).expect("certificate serializes"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtractionError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("graph has {vertices} vertices, fewer than t = {t}")]
    TooFewVertices { vertices: usize, t: usize },
    #[error("average degree {avg} is below t = {t}")]
    BelowTarget { avg: String, t: usize },
    #[error("no vertex has degree below alpha t - 1")]
    NoLowDegreeVertex,
    #[error("size bound failed; deleting {} vertices keeps the average degree at least t", witness.len())]
    RestartNeeded { witness: VertexSet },
    #[error("internal invariant failed after {case_path}: {message}")]
    Invariant { case_path: String, message: String },
}

impl From<ReductionError> for ExtractionError {
    fn from(e: ReductionError) -> Self {
        match e {
            ReductionError::Graph(g) => ExtractionError::Graph(g),
            other => ExtractionError::Precondition(other.to_string()),
        }
    }
}

fn invariant(path: &str, message: impl Into<String>) -> ExtractionError {
    ExtractionError::Invariant {
        case_path: path.to_string(),
        message: message.into(),
    }
}

/// Picks `t` vertices by repeatedly deleting a minimum-degree vertex
/// (smallest id on ties). The result spans at least `d(G)/v(G) * C(t,2)` edges.
pub fn densify_to_t(g: &Graph, t: usize) -> Result<VertexSet, ExtractionError> {
    let n = g.vertex_count();
    if n < t {
        return Err(ExtractionError::TooFewVertices { vertices: n, t });
    }
    let mut h = g.clone();
    let mut queue: BTreeSet<(usize, VertexId)> = h.vertices().map(|v| (h.degree(v), v)).collect();
    while h.vertex_count() > t {
        let (v_count, e_before) = (h.vertex_count(), h.edge_count());
        let (_, x) = queue.pop_first().expect("nonempty");
        let nbrs: Vec<VertexId> = h.neighbors(x).collect();
        for w in &nbrs {
            let d = h.degree(*w);
            queue.remove(&(d, *w));
            queue.insert((d - 1, *w));
        }
        h.remove_vertex_mut(x)?;
        // min degree <= 2e/v, so e' >= e (v - 2) / v
        if h.edge_count() * v_count < e_before * (v_count - 2) {
            return Err(invariant("densify", "deletion lost more than 2e/v edges"));
        }
    }
    let z = h.vertex_set();
    let bound = if n == 0 {
        int(0)
    } else {
        g.avg_degree() / from_usize(n) * rational::pairs(t)
    };
    if from_usize(g.edges_within(&z)) < bound {
        return Err(invariant("densify", "result below d(G)/v(G) * C(t,2)"));
    }
    Ok(z)
}

/// `(x + (1-x)^2 / y) / 2 - 1/t` with `x = |X|/t`, `y = |Y|/t`.
pub fn extension_factor(x_len: usize, y_len: usize, t: usize) -> Rational {
    let tt = from_usize(t);
    let x = from_usize(x_len) / &tt;
    let y = from_usize(y_len) / &tt;
    let one_minus = int(1) - &x;
    (x + one_minus.clone() * one_minus / y) / int(2) - int(1) / tt
}

/// Expected number of edges of `G[X u S']` for a uniform `m`-subset `S'` of `S`.
fn extension_score(e_x: usize, e_xs: usize, e_ss: usize, s_len: usize, m: usize) -> Rational {
    let mut f = from_usize(e_x);
    if s_len > 0 {
        f += from_usize(m * e_xs) / from_usize(s_len);
    }
    if s_len > 1 {
        f += from_usize(m * (m.saturating_sub(1)) * e_ss) / from_usize(s_len * (s_len - 1));
    }
    f
}

/// Extends `X` to exactly `t` vertices using vertices of `Y`, keeping the
/// expected edge count of a uniform completion from decreasing.
pub fn extend_to_t(
    g: &Graph,
    x: &VertexSet,
    y: &VertexSet,
    t: usize,
) -> Result<VertexSet, ExtractionError> {
    for v in x.iter().chain(y) {
        if !g.contains(*v) {
            return Err(GraphError::UnknownVertex(*v).into());
        }
    }
    if x.len() > t {
        return Err(ExtractionError::Precondition(format!("|X| = {} > t = {t}", x.len())));
    }
    let union: VertexSet = x.union(y).copied().collect();
    if union.len() < t {
        return Err(ExtractionError::Precondition(format!(
            "|X u Y| = {} < t = {t}",
            union.len()
        )));
    }
    for (name, set) in [("X", x), ("Y", y)] {
        if let Some(d) = g.min_degree_within(set) {
            if 2 * d < t {
                return Err(ExtractionError::Precondition(format!(
                    "delta(G[{name}]) = {d} < t/2"
                )));
            }
        }
    }
    let m = t - x.len();
    let extension_bound = extension_factor(x.len(), y.len(), t) * rational::pairs(t);
    if m == 0 {
        return Ok(x.clone());
    }

    let mut s: VertexSet = y.difference(x).copied().collect();
    let mut d_x: std::collections::BTreeMap<VertexId, usize> =
        s.iter().map(|&w| (w, g.degree_into(w, x))).collect();
    let mut d_s: std::collections::BTreeMap<VertexId, usize> =
        s.iter().map(|&w| (w, g.degree_into(w, &s))).collect();
    let e_x = g.edges_within(x);
    let mut e_xs: usize = d_x.values().sum();
    let mut e_ss: usize = d_s.values().sum::<usize>() / 2;
    let initial = extension_score(e_x, e_xs, e_ss, s.len(), m);
    let mut current = initial.clone();

    while s.len() > m {
        // After removal |S| = k; F(S - w) is maximized by minimizing
        // (k-1) d_X(w) + (m-1) d_S(w), or d_X(w) alone when k = 1.
        let k = s.len() - 1;
        let key = |w: VertexId| {
            if k >= 2 {
                (k - 1) * d_x[&w] + (m - 1) * d_s[&w]
            } else {
                d_x[&w]
            }
        };
        let w = *s.iter().min_by_key(|&&w| (key(w), w)).expect("nonempty");
        s.remove(&w);
        e_xs -= d_x.remove(&w).expect("tracked");
        e_ss -= d_s.remove(&w).expect("tracked");
        for nb in g.neighbors(w) {
            if let Some(d) = d_s.get_mut(&nb) {
                *d -= 1;
            }
        }
        let next = extension_score(e_x, e_xs, e_ss, s.len(), m);
        if next < current {
            return Err(invariant("extend", "conditional expectation decreased"));
        }
        current = next;
    }
    let z: VertexSet = x.union(&s).copied().collect();
    let achieved = from_usize(g.edges_within(&z));
    if achieved < initial {
        return Err(invariant("extend", "result below the initial expectation"));
    }
    if achieved < extension_bound {
        return Err(invariant("extend", "result below the extension bound"));
    }
    Ok(z)
}

fn check_seed_precondition(g: &Graph, params: &ExtractionParams) -> Result<(), ExtractionError> {
    params.validate()?;
    for u in g.vertices() {
        let n = g.closed_neighborhood(u);
        let d = g.min_degree_within(&n).unwrap_or(0);
        if 2 * d < params.t {
            return Err(ExtractionError::Precondition(format!(
                "delta(G[N[{u}]]) = {d} < t/2"
            )));
        }
    }
    Ok(())
}

/// Finds a dense seed set: a closed neighbourhood of medium degree, the union
/// of all low-degree neighbourhoods, or a growing union of them.
pub fn find_dense_seed(g: &Graph, params: &ExtractionParams) -> Result<SeedOutcome, ExtractionError> {
    check_seed_precondition(g, params)?;
    let t = from_usize(params.t);
    let low = params.alpha.clone() * &t - int(1);
    let high = params.beta.clone() * &t - int(1);
    let alpha_t = params.alpha.clone() * &t;
    let beta_t = params.beta.clone() * &t;

    let deg = |u: VertexId| from_usize(g.degree(u));
    if let Some(u) = g.vertices().find(|&u| deg(u) >= low && deg(u) <= high) {
        return Ok(SeedOutcome {
            case: SeedCase::Case1,
            x: g.closed_neighborhood(u),
            y: None,
        });
    }
    let small: Vec<VertexId> = g.vertices().filter(|&u| deg(u) < low).collect();
    if small.is_empty() {
        return Err(ExtractionError::NoLowDegreeVertex);
    }
    let a: VertexSet = small.iter().flat_map(|&u| g.closed_neighborhood(u)).collect();
    if from_usize(a.len()) < alpha_t {
        return Ok(SeedOutcome {
            case: SeedCase::Case2,
            x: a,
            y: None,
        });
    }
    let mut b = VertexSet::new();
    for &u in &small {
        let n = g.closed_neighborhood(u);
        let grown: VertexSet = b.union(&n).copied().collect();
        if from_usize(grown.len()) >= alpha_t {
            if from_usize(grown.len()) <= beta_t {
                return Ok(SeedOutcome {
                    case: SeedCase::Case1,
                    x: grown,
                    y: None,
                });
            }
            return Ok(SeedOutcome {
                case: SeedCase::Case3,
                x: b,
                y: Some(n),
            });
        }
        b = grown;
    }
    unreachable!("the union of all low-degree neighbourhoods reaches alpha t")
}

/// `(lambda - 3/4) |X| / (lambda - 1 - 3/t)`, the size bound on a minimal graph.
pub fn case2_vertex_bound(x_len: usize, lambda: &Rational, t: usize) -> Rational {
    let tt = from_usize(t);
    (lambda.clone() - ratio(3, 4)) * from_usize(x_len) / (lambda.clone() - int(1) - int(3) / tt)
}

/// When every vertex off `X` has degree above `lambda t - 1`, a minimal graph
/// is small, and a greedy `t`-subset of the whole graph is dense. If the size
/// bound fails, `X` itself can be deleted without dropping below `t`, and the
/// caller should restart on `G - X`.
pub fn case2_extract(
    g: &Graph,
    x: &VertexSet,
    lambda: &Rational,
    t: usize,
) -> Result<VertexSet, ExtractionError> {
    let tt = from_usize(t);
    let pre = |m: String| Err(ExtractionError::Precondition(m));
    if t == 0 {
        return pre("t must be positive".into());
    }
    if let Some(&v) = x.iter().find(|&&v| !g.contains(v)) {
        return Err(GraphError::UnknownVertex(v).into());
    }
    if g.avg_degree() < tt {
        return pre("average degree below t".into());
    }
    // d(G - u) >= t  <=>  2(e - deg u) >= t (v - 1)
    let (v, e) = (g.vertex_count(), g.edge_count());
    if let Some(u) = g
        .vertices()
        .find(|&u| v > 1 && from_usize(2 * (e - g.degree(u))) >= tt.clone() * from_usize(v - 1))
    {
        return pre(format!("deleting vertex {u} keeps the average degree at least t"));
    }
    if x.is_empty() || x.len() >= g.vertex_count() {
        return pre("X must be a nonempty proper subset".into());
    }
    if g.min_degree_within(x).is_none_or(|d| 2 * d < t) {
        return pre("delta(G[X]) < t/2".into());
    }
    let floor = lambda.clone() * &tt - int(1);
    if let Some(u) = g
        .vertices()
        .find(|u| !x.contains(u) && from_usize(g.degree(*u)) <= floor)
    {
        return pre(format!("vertex {u} off X has degree <= lambda t - 1"));
    }
    if *lambda <= int(1) + int(3) / &tt {
        return pre("lambda must exceed 1 + 3/t".into());
    }

    let n = g.vertex_count();
    if from_usize(n) >= case2_vertex_bound(x.len(), lambda, t) {
        let rest = g.without(x)?;
        if rest.avg_degree() < tt {
            return Err(invariant(
                "case2",
                "size bound failed although deleting X lowers the average degree",
            ));
        }
        return Err(ExtractionError::RestartNeeded { witness: x.clone() });
    }
    let z = densify_to_t(g, t)?;
    let bound = (lambda.clone() - int(1) - int(3) / &tt) * &tt
        / ((lambda.clone() - ratio(3, 4)) * from_usize(x.len()))
        * rational::pairs(t);
    if from_usize(g.edges_within(&z)) < bound {
        return Err(invariant("case2", "result below the small-graph bound"));
    }
    Ok(z)
}

/// Reduces until the graph is vertex-minimal for `t` and every closed
/// neighbourhood is dense, appending every step to `trace`.
fn reduce_for_seed(
    mut g: Graph,
    t: &Rational,
    trace: &mut ContractionTrace,
) -> Result<Graph, ExtractionError> {
    loop {
        let (h, deletions) = minimalize_vertices(&g, t)?;
        trace.extend(&deletions);
        let r = mader_reduce(&h);
        if r.trace.is_empty() {
            return Ok(h);
        }
        trace.extend(&r.trace);
        g = r.reduced;
    }
}

/// Grows `X` by whole closed neighbourhoods (ascending id) while it stays
/// within `t` vertices, until no neighbourhood fits.
fn grow_maximal(g: &Graph, mut x: VertexSet, t: usize) -> VertexSet {
    loop {
        let mut changed = false;
        for u in g.vertices() {
            let n = g.closed_neighborhood(u);
            if n.is_subset(&x) {
                continue;
            }
            if x.union(&n).count() <= t {
                x.extend(n);
                changed = true;
            }
        }
        if !changed {
            return x;
        }
    }
}

struct Choice {
    z: VertexSet,
    tag: &'static str,
    floor: Option<Rational>,
}

fn choose_subset(
    g: &Graph,
    params: &ExtractionParams,
    path: &str,
) -> Result<Choice, ExtractionError> {
    let t = params.t;
    let tt = from_usize(t);
    let defaults = params.is_default();
    let floor = |f: Rational| defaults.then(|| f * rational::pairs(t));
    let size_bound_applies = |lambda: &Rational| *lambda > int(1) + int(3) / &tt;

    let seed = match find_dense_seed(g, params) {
        Ok(seed) => seed,
        Err(ExtractionError::NoLowDegreeVertex) => {
            return Ok(Choice {
                z: densify_to_t(g, t)?,
                tag: "fallback-densify",
                floor: None,
            });
        }
        Err(e) => return Err(e),
    };
    seed.check(g, params).map_err(|m| invariant(path, m))?;

    match seed.case {
        SeedCase::Case1 if seed.x.len() >= t => {
            let sub = g.induced(&seed.x)?;
            Ok(Choice {
                z: densify_to_t(&sub, t)?,
                tag: "case1-densify",
                floor: floor(ratio(5, 12)),
            })
        }
        SeedCase::Case1 => {
            let x = grow_maximal(g, seed.x, t);
            if x.len() == t {
                return Ok(Choice {
                    z: x,
                    tag: "case1-exact",
                    floor: floor(ratio(1, 2)),
                });
            }
            let nu_floor = params.nu.clone() * &tt - int(1);
            if let Some(u) = g
                .vertices()
                .find(|u| !x.contains(u) && from_usize(g.degree(*u)) <= nu_floor)
            {
                let y = g.closed_neighborhood(u);
                return Ok(Choice {
                    z: extend_to_t(g, &x, &y, t)?,
                    tag: "case1-extend",
                    floor: floor(ratio(5, 12) - int(1) / &tt),
                });
            }
            if size_bound_applies(&params.nu) {
                Ok(Choice {
                    z: case2_extract(g, &x, &params.nu, t)?,
                    tag: "case1-small-graph",
                    floor: floor(ratio(4, 9) - int(12) / &tt),
                })
            } else {
                Ok(Choice {
                    z: densify_to_t(g, t)?,
                    tag: "case1-fallback-densify",
                    floor: None,
                })
            }
        }
        SeedCase::Case2 => {
            if size_bound_applies(&params.beta) {
                Ok(Choice {
                    z: case2_extract(g, &seed.x, &params.beta, t)?,
                    tag: "case2-small-graph",
                    floor: floor(ratio(4, 9) - int(24) / &tt),
                })
            } else {
                Ok(Choice {
                    z: densify_to_t(g, t)?,
                    tag: "case2-fallback-densify",
                    floor: None,
                })
            }
        }
        SeedCase::Case3 => {
            let y = seed.y.expect("case 3 has Y");
            let (base, other) = if seed.x.len() >= y.len() {
                (seed.x, y)
            } else {
                (y, seed.x)
            };
            Ok(Choice {
                z: extend_to_t(g, &base, &other, t)?,
                tag: "case3-extend",
                floor: floor(sqrt2_under() - int(1) - int(1) / &tt),
            })
        }
    }
}

/// Runs the full pipeline and returns a certificate whose model lives in `g`.
pub fn extract_dense_minor(
    g: &Graph,
    params: &ExtractionParams,
) -> Result<DensityCertificate, ExtractionError> {
    params.validate()?;
    let t = params.t;
    let tt = from_usize(t);
    if g.avg_degree() < tt {
        return Err(ExtractionError::BelowTarget {
            avg: rational::display(&g.avg_degree()),
            t,
        });
    }

    let mut trace = ContractionTrace::new();
    let mut current = g.clone();
    let mut steps: Vec<String> = Vec::new();
    let mut restarts = 0usize;
    let (reduced, choice) = loop {
        let reduced = reduce_for_seed(current, &tt, &mut trace)?;
        let path = steps.join(">");
        match choose_subset(&reduced, params, &path) {
            Ok(choice) => break (reduced, choice),
            Err(ExtractionError::RestartNeeded { witness }) => {
                restarts += 1;
                steps.push("restart".into());
                if restarts > g.vertex_count() {
                    return Err(invariant(&steps.join(">"), "too many restarts"));
                }
                for &v in &witness {
                    trace.push(TraceOp::Delete { vertex: v });
                }
                current = reduced.without(&witness)?;
            }
            Err(ExtractionError::Invariant { case_path, message }) => {
                let mut full = steps.clone();
                full.push(case_path);
                return Err(invariant(&full.join(">"), message));
            }
            Err(e) => return Err(e),
        }
    };
    steps.push(choice.tag.to_string());
    let case_path = steps.join(">");

    if choice.z.len() != t {
        return Err(invariant(&case_path, "selected set does not have t vertices"));
    }
    let subset_edges = reduced.edges_within(&choice.z);
    if let Some(f) = &choice.floor {
        if from_usize(subset_edges) < *f {
            return Err(invariant(&case_path, "result below the per-case floor"));
        }
    }

    let (replayed, full_model) = trace.replay(g)?;
    if replayed != reduced {
        return Err(invariant(&case_path, "trace replay disagrees with the reduced graph"));
    }
    let model = MinorModel::from_sets(
        choice
            .z
            .iter()
            .map(|v| full_model.branch_sets[v].clone()),
    );
    let check = model.check_structure(g);
    if !check.is_valid() {
        return Err(invariant(&case_path, format!("model is invalid: {check:?}")));
    }
    let achieved_edges = model.edge_count(g)?;
    if achieved_edges != subset_edges {
        return Err(invariant(&case_path, "model edge count differs from the subgraph"));
    }
    let bound = guaranteed_bound(t);
    if from_usize(achieved_edges) < bound {
        return Err(invariant(&case_path, "result below the guaranteed bound"));
    }
    Ok(DensityCertificate {
        t,
        model,
        achieved_edges,
        guaranteed_bound: bound,
        case_path,
        restarts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduction::mader_reduce;
    use crate::testutil::gnp;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn set(ids: impl IntoIterator<Item = VertexId>) -> VertexSet {
        ids.into_iter().collect()
    }

    fn cliques(sizes: &[usize]) -> Graph {
        sizes
            .iter()
            .fold(Graph::new(), |g, &n| g.disjoint_union(&Graph::complete(n)))
    }

    /// Two universal vertices joined to `leaves` pendant-free leaves.
    fn double_star(leaves: u32) -> Graph {
        let mut edges = vec![(0, 1)];
        for l in 2..2 + leaves {
            edges.push((0, l));
            edges.push((1, l));
        }
        Graph::from_edges(2 + leaves as usize, &edges).unwrap()
    }

    #[test]
    fn sqrt2_lower_values() {
        assert_eq!(sqrt2_lower(120), ratio(214_213, 1_000_000));
        for t in 1..=57 {
            assert!(sqrt2_lower(t) <= int(0), "t = {t}");
            assert_eq!(guaranteed_bound(t), int(0));
        }
        assert!(sqrt2_lower(58) > int(0));
        // r^2 < 2
        assert!(sqrt2_under() * sqrt2_under() < int(2));
        assert!(sqrt2_lower(1_000_000) < sqrt2_under() - int(1));
    }

    #[test]
    fn densify_examples() {
        let k4 = Graph::complete(4);
        assert_eq!(densify_to_t(&k4, 4).unwrap(), k4.vertex_set());
        let z = densify_to_t(&k4, 3).unwrap();
        assert_eq!(k4.edges_within(&z), 3);

        let p = Graph::petersen();
        let z = densify_to_t(&p, 5).unwrap();
        assert_eq!(z.len(), 5);
        assert!(p.edges_within(&z) >= 3);
        assert_eq!(
            densify_to_t(&k4, 5),
            Err(ExtractionError::TooFewVertices { vertices: 4, t: 5 })
        );
    }

    #[test]
    fn densify_meets_bound_on_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..300 {
            let n = rng.gen_range(1..40);
            let p = rng.gen_range(0.0..1.0);
            let g = gnp(&mut rng, n, p);
            let t = rng.gen_range(1..=n);
            let z = densify_to_t(&g, t).unwrap();
            assert_eq!(z.len(), t);
            let bound = g.avg_degree() / from_usize(n) * rational::pairs(t);
            assert!(from_usize(g.edges_within(&z)) >= bound);
        }
    }

    #[test]
    fn extend_examples() {
        let k8 = Graph::complete(8);
        let x = set(0..4);
        let y = set(4..8);
        assert_eq!(extension_factor(4, 4, 6) * rational::pairs(6), ratio(15, 4));
        let z = extend_to_t(&k8, &x, &y, 6).unwrap();
        assert_eq!(z.len(), 6);
        assert!(x.is_subset(&z));
        assert_eq!(k8.edges_within(&z), 15);

        // |X| = t
        let k6 = Graph::complete(6);
        assert_eq!(extend_to_t(&k6, &set(0..4), &set(2..6), 4).unwrap(), set(0..4));
        // |Y - X| = m forces the union
        assert_eq!(extend_to_t(&k8, &set(0..4), &set(2..6), 6).unwrap(), set(0..6));
    }

    #[test]
    fn extend_preconditions() {
        let k6 = Graph::complete(6);
        assert!(matches!(
            extend_to_t(&k6, &set(0..5), &set(0..2), 4),
            Err(ExtractionError::Precondition(m)) if m.contains("|X|")
        ));
        assert!(matches!(
            extend_to_t(&k6, &set(0..2), &set(1..3), 4),
            Err(ExtractionError::Precondition(m)) if m.contains("|X u Y|")
        ));
        let c6 = Graph::cycle(6);
        assert!(matches!(
            extend_to_t(&c6, &set(0..3), &set(3..6), 6),
            Err(ExtractionError::Precondition(m)) if m.contains("delta")
        ));
    }

    #[test]
    fn extend_on_neighbourhood_unions() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut checked = 0;
        for _ in 0..300 {
            let n = rng.gen_range(8..40);
            let p = rng.gen_range(0.2..0.9);
            let g = gnp(&mut rng, n, p);
            let r = mader_reduce(&g);
            let h = r.reduced;
            let Some(t) = rational::floor_to_i64(&r.threshold) else { continue };
            let t = t as usize;
            if t < 2 || h.vertex_count() < t {
                continue;
            }
            let vs: Vec<VertexId> = h.vertices().collect();
            let mut x = VertexSet::new();
            for _ in 0..rng.gen_range(0..3) {
                let u = vs[rng.gen_range(0..vs.len())];
                let grown: VertexSet = x.union(&h.closed_neighborhood(u)).copied().collect();
                if grown.len() <= t {
                    x = grown;
                }
            }
            let y = h.closed_neighborhood(vs[rng.gen_range(0..vs.len())]);
            if x.union(&y).count() < t {
                continue;
            }
            let z = extend_to_t(&h, &x, &y, t).unwrap();
            assert_eq!(z.len(), t);
            assert!(x.is_subset(&z) && z.is_subset(&x.union(&y).copied().collect()));
            checked += 1;
        }
        assert!(checked > 50);
    }

    #[test]
    fn seed_case1_on_complete_graph() {
        let k11 = Graph::complete(11);
        let params = ExtractionParams::new(10);
        let seed = find_dense_seed(&k11, &params).unwrap();
        assert_eq!(seed.case, SeedCase::Case1);
        assert_eq!(seed.x, k11.vertex_set());
        seed.check(&k11, &params).unwrap();
    }

    #[test]
    fn seed_rejects_sparse_neighbourhoods() {
        let g = cliques(&[5, 5]);
        assert!(matches!(
            find_dense_seed(&g, &ExtractionParams::new(10)),
            Err(ExtractionError::Precondition(_))
        ));
        // delta = 5 = t/2 is allowed
        assert!(find_dense_seed(&cliques(&[6, 6]), &ExtractionParams::new(10)).is_ok());
    }

    #[test]
    fn seed_on_double_star() {
        let g = double_star(40);
        let params = ExtractionParams::new(4);
        let seed = find_dense_seed(&g, &params).unwrap();
        assert_eq!(seed.case, SeedCase::Case1);
        assert_eq!(seed.x, set(0..4));
        seed.check(&g, &params).unwrap();
    }

    #[test]
    fn seed_case2_and_case3() {
        let params = ExtractionParams::new(10);
        let g = cliques(&[7, 13]);
        let seed = find_dense_seed(&g, &params).unwrap();
        assert_eq!(seed.case, SeedCase::Case2);
        assert_eq!(seed.x, set(0..7));
        seed.check(&g, &params).unwrap();

        let g = cliques(&[7, 7]);
        let seed = find_dense_seed(&g, &params).unwrap();
        assert_eq!(seed.case, SeedCase::Case3);
        assert_eq!(seed.x, set(0..7));
        assert_eq!(seed.y, Some(set(7..14)));
        seed.check(&g, &params).unwrap();
        let z = extend_to_t(&g, &seed.x, seed.y.as_ref().unwrap(), 10).unwrap();
        assert_eq!(g.edges_within(&z), 24);
    }

    #[test]
    fn seed_invariants_on_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let mut seen = BTreeSet::new();
        for _ in 0..400 {
            let n = rng.gen_range(5..45);
            let p = rng.gen_range(0.1..0.9);
            let g = gnp(&mut rng, n, p);
            let r = mader_reduce(&g);
            let Some(t) = rational::floor_to_i64(&r.threshold) else { continue };
            if t < 1 {
                continue;
            }
            let params = ExtractionParams::new(t as usize);
            match find_dense_seed(&r.reduced, &params) {
                Ok(seed) => {
                    seed.check(&r.reduced, &params).unwrap();
                    seen.insert(format!("{:?}", seed.case));
                }
                Err(ExtractionError::NoLowDegreeVertex) => {}
                Err(e) => panic!("{e}"),
            }
        }
        assert!(seen.contains("Case1"));
    }

    /// W = K5 on 0..5, X = C20 on 5..25, each w_i joined to four cycle vertices.
    fn case2_fixture() -> (Graph, VertexSet) {
        let mut g = Graph::complete(5).disjoint_union(&Graph::cycle(20));
        for i in 0..5u32 {
            for j in 0..4 {
                g.insert_edge(i, 5 + 4 * i + j).unwrap();
            }
        }
        (g, set(5..25))
    }

    #[test]
    fn case2_success() {
        let (g, x) = case2_fixture();
        assert_eq!(g.avg_degree(), int(4));
        assert!(from_usize(g.vertex_count()) < case2_vertex_bound(20, &int(2), 4));
        let z = case2_extract(&g, &x, &int(2), 4).unwrap();
        assert_eq!(z.len(), 4);
    }

    #[test]
    fn case2_restart() {
        let g = cliques(&[14, 14, 14, 14, 42]);
        let x = set(0..56);
        let lambda = ratio(83, 50);
        assert_eq!(g.avg_degree(), int(25));
        assert!(from_usize(98) >= case2_vertex_bound(56, &lambda, 25));
        assert_eq!(
            case2_extract(&g, &x, &lambda, 25),
            Err(ExtractionError::RestartNeeded { witness: x.clone() })
        );
        assert!(g.without(&x).unwrap().avg_degree() >= int(25));
    }

    #[test]
    fn case2_preconditions() {
        let (g, x) = case2_fixture();
        let bad = |r: Result<VertexSet, ExtractionError>| {
            assert!(matches!(r, Err(ExtractionError::Precondition(_))), "{r:?}")
        };
        bad(case2_extract(&g, &x, &ratio(7, 4), 4));
        bad(case2_extract(&g, &x, &int(3), 4));
        bad(case2_extract(&g, &VertexSet::new(), &int(2), 4));
        bad(case2_extract(&g, &g.vertex_set(), &int(2), 4));
        bad(case2_extract(&g, &x, &int(2), 5));
        let mut padded = g.clone();
        padded.insert_vertex(99).unwrap();
        bad(case2_extract(&padded, &x, &int(2), 3));
    }

    fn certify(g: &Graph, cert: &DensityCertificate) {
        let required: BTreeSet<_> = cert.model.realized_edges(g).unwrap();
        assert!(cert.model.verify(g, &required).is_valid());
        assert_eq!(cert.model.len(), cert.t);
        assert_eq!(cert.model.edge_count(g).unwrap(), cert.achieved_edges);
        assert!(from_usize(cert.achieved_edges) >= cert.guaranteed_bound);
    }

    #[test]
    fn complete_graph_pipeline() {
        for t in 1..12 {
            let g = Graph::complete(t + 1);
            let cert = extract_dense_minor(&g, &ExtractionParams::new(t)).unwrap();
            assert_eq!(cert.achieved_edges, t * (t - 1) / 2);
            certify(&g, &cert);
        }
    }

    #[test]
    fn pipeline_rejects_sparse_input() {
        let g = Graph::cycle(10);
        assert!(matches!(
            extract_dense_minor(&g, &ExtractionParams::new(3)),
            Err(ExtractionError::BelowTarget { .. })
        ));
    }

    #[test]
    fn pipeline_on_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let mut tags = BTreeSet::new();
        for _ in 0..150 {
            let n = rng.gen_range(4..50);
            let p = rng.gen_range(0.1..0.95);
            let g = gnp(&mut rng, n, p);
            let Some(t) = rational::floor_to_i64(&g.avg_degree()) else { continue };
            if t < 1 {
                continue;
            }
            let cert = extract_dense_minor(&g, &ExtractionParams::new(t as usize)).unwrap();
            certify(&g, &cert);
            tags.insert(cert.case_path.rsplit('>').next().unwrap().to_string());
        }
        assert!(tags.len() >= 2, "{tags:?}");
    }

    #[test]
    fn pipeline_on_disjoint_cliques() {
        // Two K14 neighbourhoods already span 28 <= 6t/5 vertices.
        let g = cliques(&[14, 14, 14, 14, 42]);
        let cert = extract_dense_minor(&g, &ExtractionParams::new(25)).unwrap();
        certify(&g, &cert);
        assert_eq!(cert.case_path, "case1-densify");
        assert_eq!(cert.restarts, 0);
    }
}
