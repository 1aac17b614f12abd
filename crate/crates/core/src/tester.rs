//! Oblivious-tester protocol, max-cut solvers, sample-based parameter
//! estimation and certified (shadow-constrained) parameters.

use crate::error::{Error, Result};
use crate::graph::{shadow, KColoredDigraph, SimpleGraph};
use crate::property::{
    brute_force_certificate, ColoredParameter, ColoredProperty, GraphParameter, ShadowEnum,
    TestProperty, CERT_COLOR_LIMIT,
};
use crate::sample::{sample_induced, sample_induced_colored, RngSpec};
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

/// Bipartition enumeration is guarded to this many nodes.
pub const MAXCUT_EXACT_LIMIT: usize = 24;
/// Exhaustive certified-parameter search is guarded to this many nodes.
pub const CERTIFIED_EXACT_NODE_LIMIT: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaxCutMode {
    /// Enumerate all bipartitions (guarded by [`MAXCUT_EXACT_LIMIT`]).
    Exact,
    /// Multi-start single-move hill climbing; returns a lower bound.
    LocalSearch,
    /// Exact within the guard, local search beyond it.
    Auto,
}

/// A cut with its witness bipartition.
#[derive(Debug, Clone, PartialEq)]
pub struct MaxCut {
    pub cut_edges: usize,
    /// cut_edges / n²
    pub density: f64,
    pub side: Vec<bool>,
    pub exact: bool,
}

/// Maximum cut of a graph.
pub fn maxcut(g: &SimpleGraph, mode: MaxCutMode) -> Result<MaxCut> {
    let n = g.n();
    if n == 0 {
        return Err(Error::invalid("maxcut of the empty node set"));
    }
    match mode {
        MaxCutMode::Exact => {
            if n > MAXCUT_EXACT_LIMIT {
                return Err(Error::size_guard(format!(
                    "exact maxcut is limited to {MAXCUT_EXACT_LIMIT} nodes, got {n}"
                )));
            }
            Ok(maxcut_exact(g, None).0)
        }
        MaxCutMode::LocalSearch => Ok(maxcut_local_search(g)),
        MaxCutMode::Auto => {
            if n <= MAXCUT_EXACT_LIMIT {
                Ok(maxcut_exact(g, None).0)
            } else {
                Ok(maxcut_local_search(g))
            }
        }
    }
}

/// Whether the graph has a cut with at least `need` crossing edges. Exact
/// (with early exit) within the enumeration guard, local-search beyond it —
/// in which case a `false` is only "not found".
pub fn maxcut_at_least(g: &SimpleGraph, need: usize) -> bool {
    if need == 0 {
        return true;
    }
    if g.n() <= MAXCUT_EXACT_LIMIT {
        maxcut_exact(g, Some(need)).1
    } else {
        maxcut_local_search(g).cut_edges >= need
    }
}

fn adjacency_masks(g: &SimpleGraph) -> Vec<u32> {
    let n = g.n();
    let mut adj = vec![0u32; n];
    for (i, mask) in adj.iter_mut().enumerate() {
        for j in 0..n {
            if i != j && g.has_edge(i, j) {
                *mask |= 1 << j;
            }
        }
    }
    adj
}

/// Gray-code enumeration of bipartitions (last node pinned to one side).
/// Returns the best cut and whether `target` was reached (when given, the
/// scan stops as soon as it is).
fn maxcut_exact(g: &SimpleGraph, target: Option<usize>) -> (MaxCut, bool) {
    let n = g.n();
    let nn = (n * n) as f64;
    let adj = adjacency_masks(g);
    let deg: Vec<u32> = adj.iter().map(|a| a.count_ones()).collect();
    let free = n.saturating_sub(1);
    let mut s_mask = 0u32;
    let mut cut = 0i64;
    let mut best = 0i64;
    let mut best_mask = 0u32;
    let mut reached = target == Some(0);
    for gcode in 1u64..(1u64 << free) {
        let v = gcode.trailing_zeros() as usize;
        let s = (adj[v] & s_mask).count_ones() as i64;
        if s_mask >> v & 1 == 0 {
            cut += deg[v] as i64 - 2 * s;
            s_mask |= 1 << v;
        } else {
            cut += 2 * s - deg[v] as i64;
            s_mask &= !(1 << v);
        }
        if cut > best {
            best = cut;
            best_mask = s_mask;
            if let Some(t) = target {
                if best as usize >= t {
                    reached = true;
                    break;
                }
            }
        }
    }
    let side = (0..n).map(|v| best_mask >> v & 1 == 1).collect();
    (
        MaxCut {
            cut_edges: best as usize,
            density: best as f64 / nn,
            side,
            exact: true,
        },
        reached,
    )
}

fn cut_of_side(g: &SimpleGraph, side: &[bool]) -> usize {
    let n = g.n();
    let mut cut = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            if side[i] != side[j] && g.has_edge(i, j) {
                cut += 1;
            }
        }
    }
    cut
}

fn maxcut_local_search(g: &SimpleGraph) -> MaxCut {
    let n = g.n();
    let nn = (n * n) as f64;
    let starts = 8;
    let best = (0..starts)
        .into_par_iter()
        .map(|start| {
            let mut side = vec![false; n];
            if start == 0 {
                // greedy: place each node on the side with fewer placed neighbors
                for v in 0..n {
                    let mut on_true = 0usize;
                    let mut on_false = 0usize;
                    for (u, &su) in side[..v].iter().enumerate() {
                        if g.has_edge(u, v) {
                            if su {
                                on_true += 1;
                            } else {
                                on_false += 1;
                            }
                        }
                    }
                    side[v] = on_false >= on_true;
                }
            } else {
                let mut rng = RngSpec::new(0x6D61_7863_7574, start as u64).rng();
                for s in side.iter_mut() {
                    *s = rng.random::<bool>();
                }
            }
            // single-move hill climbing
            loop {
                let mut improved = false;
                for v in 0..n {
                    let mut cross = 0i64;
                    let mut deg = 0i64;
                    for u in 0..n {
                        if u != v && g.has_edge(u, v) {
                            deg += 1;
                            if side[u] != side[v] {
                                cross += 1;
                            }
                        }
                    }
                    if deg - 2 * cross > 0 {
                        side[v] = !side[v];
                        improved = true;
                    }
                }
                if !improved {
                    break;
                }
            }
            let cut = cut_of_side(g, &side);
            (cut, side)
        })
        .reduce(
            || (0, vec![false; n]),
            // total order (cut, side) keeps the reduction associative, so
            // the witness is deterministic under any reduction tree
            |a, b| if (b.0, &b.1) > (a.0, &a.1) { b } else { a },
        );
    MaxCut {
        cut_edges: best.0,
        density: best.0 as f64 / nn,
        side: best.1,
        exact: false,
    }
}

/// Minimum number of edge additions needed so that some bipartition
/// (balanced when `balanced` is set) crosses at least `need` edges.
/// Exact within the enumeration guard; flagged otherwise.
pub(crate) fn min_additions_for_cut(
    g: &SimpleGraph,
    need: usize,
    balanced: bool,
) -> Result<(usize, bool)> {
    let n = g.n();
    if n == 0 {
        return Err(Error::invalid("empty node set"));
    }
    let half = n / 2;
    if n <= MAXCUT_EXACT_LIMIT {
        let adj = adjacency_masks(g);
        let deg: Vec<u32> = adj.iter().map(|a| a.count_ones()).collect();
        let free = n.saturating_sub(1);
        let mut s_mask = 0u32;
        let mut cut = 0i64;
        let mut size = 0usize;
        let mut best = usize::MAX;
        let consider = |cut: i64, size: usize| -> usize {
            let cap = size * (n - size);
            let feasible = if balanced {
                size.min(n - size) == half
            } else {
                cap >= need
            };
            if feasible {
                need.saturating_sub(cut as usize)
            } else {
                usize::MAX
            }
        };
        best = best.min(consider(cut, size));
        for gcode in 1u64..(1u64 << free) {
            let v = gcode.trailing_zeros() as usize;
            let s = (adj[v] & s_mask).count_ones() as i64;
            if s_mask >> v & 1 == 0 {
                cut += deg[v] as i64 - 2 * s;
                s_mask |= 1 << v;
                size += 1;
            } else {
                cut += 2 * s - deg[v] as i64;
                s_mask &= !(1 << v);
                size -= 1;
            }
            best = best.min(consider(cut, size));
            if best == 0 {
                break;
            }
        }
        if best == usize::MAX {
            return Err(Error::invalid("no feasible bipartition at this size"));
        }
        Ok((best, true))
    } else {
        // heuristic: improve a balanced split by greedy swaps, then apply the
        // additive formula; the result is an upper bound on the true count
        let mut side: Vec<bool> = (0..n).map(|v| v < half).collect();
        let mut current = cut_of_side(g, &side);
        for _ in 0..4 {
            let mut improved = false;
            for a in 0..n {
                for b in (a + 1)..n {
                    if side[a] == side[b] {
                        continue;
                    }
                    side.swap(a, b);
                    let cand = cut_of_side(g, &side);
                    if cand > current {
                        current = cand;
                        improved = true;
                    } else {
                        side.swap(a, b);
                    }
                }
            }
            if !improved {
                break;
            }
        }
        if !balanced {
            // an unconstrained local search may beat the balanced split
            let ls = maxcut_local_search(g);
            let size: usize = ls.side.iter().filter(|&&s| s).count();
            if size * (n - size) >= need && ls.cut_edges > current {
                current = ls.cut_edges;
            }
        }
        Ok((need.saturating_sub(current), false))
    }
}

/// Sampling tester: `trials` samples of size `r`, accepted when the test
/// property holds. The 2/3 and 1/3 thresholds are carried in the spec and
/// reported, not enforced.
#[derive(Debug, Clone, PartialEq)]
pub struct TesterSpec {
    pub property: TestProperty,
    pub r: usize,
    pub trials: usize,
    pub accept_threshold: f64,
    pub reject_threshold: f64,
}

impl TesterSpec {
    pub fn new(property: TestProperty, r: usize, trials: usize) -> Result<Self> {
        if r < 1 {
            return Err(Error::invalid("sample size must be >= 1"));
        }
        if trials < 1 {
            return Err(Error::invalid("need at least one trial"));
        }
        Ok(TesterSpec {
            property,
            r,
            trials,
            accept_threshold: 2.0 / 3.0,
            reject_threshold: 1.0 / 3.0,
        })
    }

    pub fn with_r(mut self, r: usize) -> Self {
        self.r = r;
        self
    }

    pub fn with_trials(mut self, trials: usize) -> Self {
        self.trials = trials;
        self
    }
}

/// Tester for "the maximum cut has at least c·n² edges", with the default
/// shrinking margin.
pub fn tester_for_maxcut(c: f64) -> Result<TesterSpec> {
    if !(0.0 < c && c < 1.0) {
        return Err(Error::invalid("c must lie in (0, 1)"));
    }
    TesterSpec::new(
        TestProperty::MaxCut {
            c,
            margin_scale: None,
        },
        12,
        2000,
    )
}

#[derive(Debug, Clone, Serialize)]
pub struct AcceptanceReport {
    pub acceptance: f64,
    /// 95% binomial confidence halfwidth.
    pub ci_halfwidth: f64,
    pub accepted: usize,
    pub trials: usize,
    pub r: usize,
}

/// Fraction of `trials` random induced r-subgraphs satisfying the test
/// property. Trials consume streams `rng.stream_id .. rng.stream_id + trials`.
pub fn acceptance_probability(
    g: &SimpleGraph,
    spec: &TesterSpec,
    rng: RngSpec,
) -> Result<AcceptanceReport> {
    if spec.r > g.n() {
        return Err(Error::invalid(format!(
            "sample size {} exceeds graph size {}",
            spec.r,
            g.n()
        )));
    }
    let threshold = spec.property.cut_threshold(spec.r);
    let accepted = (0..spec.trials as u64)
        .into_par_iter()
        .map(|t| {
            let sample = sample_induced(g, spec.r, rng.stream(rng.stream_id + t))
                .expect("r <= n checked above");
            let ok = match threshold {
                Some(need) => maxcut_at_least(&sample, need),
                None => spec.property.evaluate(&sample),
            };
            ok as usize
        })
        .sum::<usize>();
    let p = accepted as f64 / spec.trials as f64;
    Ok(AcceptanceReport {
        acceptance: p,
        ci_halfwidth: 1.96 * (p * (1.0 - p) / spec.trials as f64).sqrt(),
        accepted,
        trials: spec.trials,
        r: spec.r,
    })
}

/// Exact acceptance probability by enumerating every ordered r-tuple.
/// Feasible only for tiny instances; the tuple count is guarded.
pub fn acceptance_probability_exact(g: &SimpleGraph, spec: &TesterSpec) -> Result<f64> {
    let n = g.n();
    let r = spec.r;
    if r > n {
        return Err(Error::invalid("sample size exceeds graph size"));
    }
    let mut tuples: u64 = 1;
    for t in 0..r {
        tuples = tuples.saturating_mul((n - t) as u64);
        if tuples > 2_000_000 {
            return Err(Error::size_guard("too many ordered tuples to enumerate"));
        }
    }
    let mut accepted = 0u64;
    let mut total = 0u64;
    let mut tuple = Vec::with_capacity(r);
    enumerate_tuples(g, spec, r, &mut tuple, &mut accepted, &mut total);
    Ok(accepted as f64 / total as f64)
}

fn enumerate_tuples(
    g: &SimpleGraph,
    spec: &TesterSpec,
    r: usize,
    tuple: &mut Vec<usize>,
    accepted: &mut u64,
    total: &mut u64,
) {
    if tuple.len() == r {
        let sample = g.induced(tuple).unwrap();
        *total += 1;
        if spec.property.evaluate(&sample) {
            *accepted += 1;
        }
        return;
    }
    for v in 0..g.n() {
        if !tuple.contains(&v) {
            tuple.push(v);
            enumerate_tuples(g, spec, r, tuple, accepted, total);
            tuple.pop();
        }
    }
}

/// Report of a sample-based parameter estimation run.
#[derive(Debug, Clone, Serialize)]
pub struct EstimateReport {
    pub parameter: String,
    pub point_estimate: f64,
    pub sample_k: usize,
    pub trials: usize,
    /// Per-trial parameter values on the sampled subgraphs.
    pub values: Vec<f64>,
    /// f(G) when computable, with its exactness.
    pub reference: Option<f64>,
    pub reference_exact: bool,
    /// max |f(G) - f(sample)| when the reference is known, else the spread
    /// max - min of the per-trial values.
    pub empirical_deviation: f64,
    pub deviation_is_spread: bool,
    /// Error level and the fraction of trials deviating beyond it.
    pub epsilon: f64,
    pub delta: f64,
}

fn finish_report(
    parameter: String,
    sample_k: usize,
    values: Vec<f64>,
    reference: Option<f64>,
    reference_exact: bool,
    epsilon: f64,
) -> EstimateReport {
    let trials = values.len();
    let point_estimate = values.iter().sum::<f64>() / trials as f64;
    let (empirical_deviation, deviation_is_spread, delta) = match reference {
        Some(f) => {
            let dev = values.iter().fold(0.0f64, |acc, v| acc.max((v - f).abs()));
            let exceed = values.iter().filter(|v| (*v - f).abs() > epsilon).count();
            (dev, false, exceed as f64 / trials as f64)
        }
        None => {
            let max = values.iter().cloned().fold(f64::MIN, f64::max);
            let min = values.iter().cloned().fold(f64::MAX, f64::min);
            let exceed = values
                .iter()
                .filter(|v| (*v - point_estimate).abs() > epsilon)
                .count();
            (max - min, true, exceed as f64 / trials as f64)
        }
    };
    EstimateReport {
        parameter,
        point_estimate,
        sample_k,
        trials,
        values,
        reference,
        reference_exact,
        empirical_deviation,
        deviation_is_spread,
        epsilon,
        delta,
    }
}

/// Estimates a graph parameter from `trials` random k-node induced samples.
/// Streams `rng.stream_id .. rng.stream_id + trials` are consumed.
pub fn estimate_parameter(
    g: &SimpleGraph,
    f: GraphParameter,
    sample_k: usize,
    trials: usize,
    epsilon: f64,
    rng: RngSpec,
) -> Result<EstimateReport> {
    if sample_k > g.n() {
        return Err(Error::invalid("sample size exceeds graph size"));
    }
    if trials < 1 {
        return Err(Error::invalid("need at least one trial"));
    }
    let values: Vec<f64> = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let sample = sample_induced(g, sample_k, rng.stream(rng.stream_id + t)).unwrap();
            f.evaluate(&sample).map(|(v, _)| v)
        })
        .collect::<Result<_>>()?;
    let (reference, reference_exact) = match f {
        GraphParameter::EdgeDensity => (Some(g.edge_density()), true),
        GraphParameter::NormalizedMaxcut => {
            if g.n() <= MAXCUT_EXACT_LIMIT {
                (Some(maxcut(g, MaxCutMode::Exact)?.density), true)
            } else {
                (None, false)
            }
        }
    };
    Ok(finish_report(
        f.id_string().to_string(),
        sample_k,
        values,
        reference,
        reference_exact,
        epsilon,
    ))
}

/// Colored variant over induced sub-digraphs.
pub fn estimate_parameter_colored(
    l: &KColoredDigraph,
    f: ColoredParameter,
    sample_k: usize,
    trials: usize,
    epsilon: f64,
    rng: RngSpec,
) -> Result<EstimateReport> {
    if sample_k > l.n() {
        return Err(Error::invalid("sample size exceeds digraph size"));
    }
    if trials < 1 {
        return Err(Error::invalid("need at least one trial"));
    }
    let values: Vec<f64> = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let sample =
                sample_induced_colored(l, sample_k, rng.stream(rng.stream_id + t)).unwrap();
            f.evaluate(&sample)
        })
        .collect();
    Ok(finish_report(
        f.id_string().to_string(),
        sample_k,
        values,
        Some(f.evaluate(l)),
        true,
        epsilon,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertifiedMode {
    Exact,
    Heuristic,
}

/// Maximum of a colored parameter over all colorings with the given shadow.
#[derive(Debug, Clone)]
pub struct CertifiedValue {
    pub value: f64,
    pub witness: Option<KColoredDigraph>,
    pub exact: bool,
}

/// g'(G) = max { g(L) : shadow(L, m) = G }, exact by shadow-constrained
/// enumeration within the guards, or a lower-bound witness found by
/// annealing over shadow-preserving recolorings.
pub fn certified_parameter(
    g: &SimpleGraph,
    p: ColoredParameter,
    k: u8,
    m: u8,
    mode: CertifiedMode,
    rng: RngSpec,
) -> Result<CertifiedValue> {
    if m < 1 || m > k {
        return Err(Error::invalid("need 1 <= m <= k"));
    }
    match mode {
        CertifiedMode::Exact => {
            if g.n() > CERTIFIED_EXACT_NODE_LIMIT {
                return Err(Error::size_guard(format!(
                    "exact certified parameter is limited to {CERTIFIED_EXACT_NODE_LIMIT} nodes"
                )));
            }
            if k > CERT_COLOR_LIMIT {
                return Err(Error::size_guard(format!(
                    "exact certified parameter is limited to {CERT_COLOR_LIMIT} colors"
                )));
            }
            certified_exact(g, p, k, m)
        }
        CertifiedMode::Heuristic => certified_heuristic(g, p, k, m, rng),
    }
}

fn certified_exact(g: &SimpleGraph, p: ColoredParameter, k: u8, m: u8) -> Result<CertifiedValue> {
    let plan = ShadowEnum::new(g, k, m)?;
    if plan.combos.iter().any(|c| c.is_empty()) {
        return Err(Error::invalid("no coloring has this shadow"));
    }
    let n = g.n();
    let mut search = CertifiedSearch {
        plan: &plan,
        g,
        p,
        n,
        k,
        grid: vec![0u8; n * n],
        double_one: Vec::new(),
        best_value: -1.0,
        best_grid: Vec::new(),
    };
    search.dfs(0);
    let witness = KColoredDigraph::from_grid(n, k, search.best_grid)?;
    debug_assert_eq!(shadow(&witness, m)?, *g);
    Ok(CertifiedValue {
        value: search.best_value,
        witness: Some(witness),
        exact: true,
    })
}

/// DFS over shadow-compatible colorings maximizing the parameter, with an
/// optimistic bound: only shadow edges can become double-1 pairs, each
/// contributing 2/n².
struct CertifiedSearch<'a> {
    plan: &'a ShadowEnum,
    g: &'a SimpleGraph,
    p: ColoredParameter,
    n: usize,
    k: u8,
    grid: Vec<u8>,
    double_one: Vec<(usize, usize)>,
    best_value: f64,
    best_grid: Vec<u8>,
}

impl CertifiedSearch<'_> {
    fn dfs(&mut self, depth: usize) {
        if depth == self.plan.pairs.len() {
            let l = KColoredDigraph::from_grid(self.n, self.k, self.grid.clone()).unwrap();
            let v = self.p.evaluate(&l);
            if v > self.best_value {
                self.best_value = v;
                self.best_grid = self.grid.clone();
            }
            return;
        }
        let nn = (self.n * self.n) as f64;
        let remaining_edges = self.plan.pairs[depth..]
            .iter()
            .filter(|&&(i, j)| self.g.has_edge(i, j))
            .count();
        let optimistic = (2 * (self.double_one.len() + remaining_edges)) as f64 / nn;
        if optimistic <= self.best_value {
            return;
        }
        let (i, j) = self.plan.pairs[depth];
        for idx in 0..self.plan.combos[depth].len() {
            let (a, b) = self.plan.combos[depth][idx];
            self.grid[i * self.n + j] = a;
            self.grid[j * self.n + i] = b;
            let is_double_one = a == 1 && b == 1;
            if is_double_one {
                self.double_one.push((i, j));
            }
            // growing a non-bipartite double-1 set can never score above 0
            let viable = !is_double_one
                || crate::property::is_bipartite_pairs(self.n, &self.double_one)
                || self.best_value < 0.0;
            if viable {
                self.dfs(depth + 1);
            }
            if is_double_one {
                self.double_one.pop();
            }
        }
    }
}

/// Annealing over shadow-preserving single-pair recolorings: the feasible
/// set is a product space over pairs, so every move stays feasible.
fn certified_heuristic(
    g: &SimpleGraph,
    p: ColoredParameter,
    k: u8,
    m: u8,
    rng: RngSpec,
) -> Result<CertifiedValue> {
    let plan = ShadowEnum::new(g, k, m)?;
    if plan.combos.iter().any(|c| c.is_empty()) {
        return Err(Error::invalid("no coloring has this shadow"));
    }
    let n = g.n();
    let mut rng = rng.rng();
    let mut grid = vec![0u8; n * n];
    for (pair, combos) in plan.pairs.iter().zip(&plan.combos) {
        let &(i, j) = pair;
        let (a, b) = combos[rng.random_range(0..combos.len())];
        grid[i * n + j] = a;
        grid[j * n + i] = b;
    }
    let mut current = KColoredDigraph::from_grid(n, k, grid)?;
    let mut current_value = p.evaluate(&current);
    let mut best = current.clone();
    let mut best_value = current_value;
    let sweeps = 60usize.max(8 * plan.pairs.len());
    let mut temperature = 0.05f64;
    for _ in 0..sweeps {
        for pair_idx in 0..plan.pairs.len() {
            let (i, j) = plan.pairs[pair_idx];
            let combos = &plan.combos[pair_idx];
            let (a, b) = combos[rng.random_range(0..combos.len())];
            let (old_a, old_b) = (current.color(i, j), current.color(j, i));
            if (a, b) == (old_a, old_b) {
                continue;
            }
            current.set_color(i, j, a)?;
            current.set_color(j, i, b)?;
            let value = p.evaluate(&current);
            let delta = value - current_value;
            let accept = delta >= 0.0 || rng.random::<f64>() < (delta / temperature).exp();
            if accept {
                current_value = value;
                if value > best_value {
                    best_value = value;
                    best = current.clone();
                }
            } else {
                current.set_color(i, j, old_a)?;
                current.set_color(j, i, old_b)?;
            }
        }
        temperature *= 0.93;
    }
    debug_assert_eq!(shadow(&best, m)?, *g);
    Ok(CertifiedValue {
        value: best_value,
        witness: Some(best),
        exact: false,
    })
}

/// Nondeterministic membership oracle: does some k-coloring with shadow G
/// satisfy Q?
pub fn nd_membership(g: &SimpleGraph, q: &ColoredProperty, k: u8, m: u8) -> Result<bool> {
    Ok(brute_force_certificate(g, q, k, m)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::{generate, GeneratorSpec};

    fn seed(stream: u64) -> RngSpec {
        RngSpec::new(0xBEEF, stream)
    }

    /// Straightforward bipartition scan used as the oracle for the fast
    /// enumerator.
    fn maxcut_by_scan(g: &SimpleGraph) -> usize {
        let n = g.n();
        let mut best = 0;
        for mask in 0u32..(1 << (n - 1)) {
            let side: Vec<bool> = (0..n).map(|v| mask >> v & 1 == 1).collect();
            best = best.max(cut_of_side(g, &side));
        }
        best
    }

    #[test]
    fn maxcut_of_c5() {
        let g = SimpleGraph::cycle(5);
        let mc = maxcut(&g, MaxCutMode::Exact).unwrap();
        assert_eq!(mc.cut_edges, 4);
        assert!((mc.density - 0.16).abs() < 1e-15);
        assert_eq!(maxcut_by_scan(&g), 4);
        assert_eq!(cut_of_side(&g, &mc.side), 4);
    }

    #[test]
    fn maxcut_of_k33_and_empty() {
        let k33 = SimpleGraph::complete_bipartite(3, 3);
        let mc = maxcut(&k33, MaxCutMode::Exact).unwrap();
        assert_eq!(mc.cut_edges, 9);
        assert!((mc.density - 0.25).abs() < 1e-15);
        let empty = SimpleGraph::empty(4);
        assert_eq!(maxcut(&empty, MaxCutMode::Exact).unwrap().cut_edges, 0);
    }

    #[test]
    fn maxcut_exact_matches_scan_on_random_graphs() {
        for t in 0..30 {
            let g = generate(
                &GeneratorSpec::ErdosRenyi {
                    n: 3 + (t as usize % 8),
                    p: 0.5,
                },
                seed(t),
            );
            let fast = maxcut(&g, MaxCutMode::Exact).unwrap().cut_edges;
            assert_eq!(fast, maxcut_by_scan(&g), "trial {t}");
        }
    }

    #[test]
    fn maxcut_local_search_is_lower_bound() {
        for t in 0..20 {
            let g = generate(
                &GeneratorSpec::ErdosRenyi {
                    n: 4 + (t as usize % 9),
                    p: 0.4,
                },
                seed(100 + t),
            );
            let exact = maxcut(&g, MaxCutMode::Exact).unwrap().cut_edges;
            let ls = maxcut(&g, MaxCutMode::LocalSearch).unwrap();
            assert!(ls.cut_edges <= exact);
            assert!(!ls.exact);
            assert_eq!(cut_of_side(&g, &ls.side), ls.cut_edges);
        }
    }

    #[test]
    fn maxcut_guard() {
        let g = SimpleGraph::empty(25);
        assert!(maxcut(&g, MaxCutMode::Exact).is_err());
        assert!(maxcut(&g, MaxCutMode::Auto).is_ok());
    }

    #[test]
    fn maxcut_at_least_early_exit() {
        let g = SimpleGraph::complete_bipartite(5, 5);
        assert!(maxcut_at_least(&g, 25));
        assert!(!maxcut_at_least(&g, 26));
        assert!(maxcut_at_least(&SimpleGraph::empty(3), 0));
    }

    #[test]
    fn tester_complete_property() {
        let spec = TesterSpec::new(TestProperty::Complete, 5, 200).unwrap();
        let g = SimpleGraph::complete(20);
        let rep = acceptance_probability(&g, &spec, seed(1)).unwrap();
        assert_eq!(rep.acceptance, 1.0);
    }

    #[test]
    fn tester_has_edge_on_empty_graph() {
        let spec = TesterSpec::new(TestProperty::HasEdge, 4, 200).unwrap();
        let g = SimpleGraph::empty(15);
        let rep = acceptance_probability(&g, &spec, seed(2)).unwrap();
        assert_eq!(rep.acceptance, 0.0);
    }

    #[test]
    fn tester_maxcut_on_balanced_bipartite() {
        // K_{50,50} has maxcut density 1/4; the c=0.2 tester accepts samples
        // of size 12 almost always.
        let g = SimpleGraph::complete_bipartite(50, 50);
        let spec = tester_for_maxcut(0.2).unwrap().with_trials(2000);
        let rep = acceptance_probability(&g, &spec, seed(3)).unwrap();
        assert!(rep.acceptance >= 0.9, "{}", rep.acceptance);
    }

    #[test]
    fn tester_raw_threshold_without_margin() {
        // margin_scale = 0 tests the plain threshold mc >= 0.2·r². On
        // K_{50,50} at r = 10 a sample is K_{a,10-a} with hypergeometric a,
        // so the exact acceptance probability is the tail mass of
        // { a : a(10-a) >= 20 } = { 3 .. 7 }.
        fn binom(n: u128, k: u128) -> u128 {
            let mut acc = 1u128;
            for i in 0..k {
                acc = acc * (n - i) / (i + 1);
            }
            acc
        }
        let exact: f64 = (0..=10u128)
            .filter(|&a| a * (10 - a) >= 20)
            .map(|a| binom(50, a) * binom(50, 10 - a))
            .sum::<u128>() as f64
            / binom(100, 10) as f64;
        assert!(exact > 2.0 / 3.0 && exact < 0.95, "{exact}");

        let g = SimpleGraph::complete_bipartite(50, 50);
        let spec = TesterSpec::new(
            TestProperty::MaxCut {
                c: 0.2,
                margin_scale: Some(0.0),
            },
            10,
            2000,
        )
        .unwrap();
        let rep = acceptance_probability(&g, &spec, seed(90)).unwrap();
        assert!(
            (rep.acceptance - exact).abs() <= 0.02,
            "{} vs exact {exact}",
            rep.acceptance
        );
    }

    #[test]
    fn tester_maxcut_rejects_empty() {
        let g = SimpleGraph::empty(60);
        for r in [4usize, 8, 12, 16] {
            let spec = tester_for_maxcut(0.2).unwrap().with_r(r).with_trials(400);
            let rep = acceptance_probability(&g, &spec, seed(4)).unwrap();
            assert!(rep.acceptance <= 0.1, "r={r}: {}", rep.acceptance);
        }
    }

    #[test]
    fn tester_acceptance_monotone_in_c() {
        let g = generate(&GeneratorSpec::ErdosRenyi { n: 60, p: 0.5 }, seed(50));
        let mut last = f64::INFINITY;
        for c in [0.1, 0.15, 0.2, 0.25] {
            let spec = tester_for_maxcut(c).unwrap().with_trials(600);
            let rep = acceptance_probability(&g, &spec, seed(51)).unwrap();
            assert!(rep.acceptance <= last + 1e-12);
            last = rep.acceptance;
        }
    }

    #[test]
    fn tester_acceptance_monotone_in_density() {
        // acceptance at fixed c grows with the true maxcut density
        let mut last = -1.0;
        for p in [0.1, 0.5, 0.9] {
            let g = generate(&GeneratorSpec::ErdosRenyi { n: 100, p }, seed(60));
            let spec = tester_for_maxcut(0.2).unwrap().with_trials(500);
            let rep = acceptance_probability(&g, &spec, seed(61)).unwrap();
            assert!(rep.acceptance >= last - 0.02, "p={p}");
            last = rep.acceptance;
        }
    }

    #[test]
    fn exact_acceptance_invariant_under_relabeling() {
        let g = SimpleGraph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5), (1, 4)])
            .unwrap();
        let sigma = [5usize, 3, 0, 4, 2, 1];
        let gp = g.relabel(&sigma).unwrap();
        let spec = TesterSpec::new(TestProperty::HasEdge, 3, 1).unwrap();
        let a = acceptance_probability_exact(&g, &spec).unwrap();
        let b = acceptance_probability_exact(&gp, &spec).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn estimate_edge_density_on_complete_graph() {
        let n = 15;
        let k = 6;
        let g = SimpleGraph::complete(n);
        let rep = estimate_parameter(&g, GraphParameter::EdgeDensity, k, 50, 0.1, seed(7)).unwrap();
        // every sample is complete: density k(k-1)/k²
        let expect = (k * (k - 1)) as f64 / (k * k) as f64;
        for v in &rep.values {
            assert!((v - expect).abs() < 1e-12);
        }
        let bound = 1.0 / k as f64 + 1.0 / n as f64;
        assert!(rep.empirical_deviation <= bound + 1e-12);
    }

    #[test]
    fn estimate_single_trial_has_one_value() {
        let g = SimpleGraph::cycle(8);
        let rep = estimate_parameter(&g, GraphParameter::EdgeDensity, 3, 1, 0.1, seed(8)).unwrap();
        assert_eq!(rep.values.len(), 1);
        assert_eq!(rep.point_estimate, rep.values[0]);
    }

    #[test]
    fn estimate_maxcut_on_k1010() {
        let g = SimpleGraph::complete_bipartite(10, 10);
        let rep =
            estimate_parameter(&g, GraphParameter::NormalizedMaxcut, 8, 500, 0.1, seed(9)).unwrap();
        assert_eq!(rep.reference, Some(0.25));
        // |f(G) - f(sample)| <= 0.1 in at least 90% of trials
        assert!(rep.delta <= 0.1, "delta={}", rep.delta);
    }

    #[test]
    fn estimate_colored_parameter_on_indicator() {
        // a digraph whose double-1 pairs form one bipartite edge set
        let mut l = KColoredDigraph::constant(10, 2, 2).unwrap();
        for j in 1..10usize {
            l.set_color(0, j, 1).unwrap();
            l.set_color(j, 0, 1).unwrap();
        }
        let rep = estimate_parameter_colored(
            &l,
            ColoredParameter::TwoColoredEdges,
            5,
            200,
            0.2,
            seed(44),
        )
        .unwrap();
        assert_eq!(rep.reference, Some(18.0 / 100.0));
        // samples of a star keep a bipartite double-1 set, so values stay
        // close to the global one
        assert!(rep.delta <= 0.2, "delta={}", rep.delta);
        assert_eq!(rep.values.len(), 200);
    }

    #[test]
    fn estimate_on_disjoint_union_halves_density() {
        let g = generate(&GeneratorSpec::ErdosRenyi { n: 30, p: 0.6 }, seed(38));
        let doubled = g.disjoint_union(&g);
        let single = g.edge_density();
        let rep =
            estimate_parameter(&doubled, GraphParameter::EdgeDensity, 20, 300, 0.1, seed(39))
                .unwrap();
        assert!(
            (rep.point_estimate - single / 2.0).abs() < 0.05,
            "{} vs {}",
            rep.point_estimate,
            single / 2.0
        );
    }

    #[test]
    fn certified_two_colored_on_c5() {
        // maximum over certificates is the normalized max cut in the
        // ordered-pair convention: 2·4/25
        let g = SimpleGraph::cycle(5);
        let v = certified_parameter(
            &g,
            ColoredParameter::TwoColoredEdges,
            2,
            1,
            CertifiedMode::Exact,
            seed(0),
        )
        .unwrap();
        assert!((v.value - 0.32).abs() < 1e-12);
        assert!(v.exact);
        let mc = maxcut(&g, MaxCutMode::Exact).unwrap();
        assert!((v.value - 2.0 * mc.density).abs() < 1e-12);
    }

    #[test]
    fn certified_on_empty_graph_is_zero() {
        let g = SimpleGraph::empty(4);
        let v = certified_parameter(
            &g,
            ColoredParameter::TwoColoredEdges,
            2,
            1,
            CertifiedMode::Exact,
            seed(0),
        )
        .unwrap();
        assert_eq!(v.value, 0.0);
    }

    #[test]
    fn certified_heuristic_is_lower_bound() {
        for t in 0..12 {
            let g = generate(
                &GeneratorSpec::ErdosRenyi {
                    n: 4 + (t as usize % 3),
                    p: 0.5,
                },
                seed(200 + t),
            );
            let exact = certified_parameter(
                &g,
                ColoredParameter::TwoColoredEdges,
                2,
                1,
                CertifiedMode::Exact,
                seed(0),
            )
            .unwrap();
            let heur = certified_parameter(
                &g,
                ColoredParameter::TwoColoredEdges,
                2,
                1,
                CertifiedMode::Heuristic,
                seed(300 + t),
            )
            .unwrap();
            assert!(heur.value <= exact.value + 1e-12, "trial {t}");
        }
    }

    #[test]
    fn nd_membership_examples() {
        // C5 can certify 4 ordered double-1 pairs, K3 cannot certify 6
        let c5 = SimpleGraph::cycle(5);
        assert!(nd_membership(
            &c5,
            &ColoredProperty::BipartiteColorOne { min_ordered: 4 },
            2,
            1
        )
        .unwrap());
        let k3 = SimpleGraph::complete(3);
        assert!(!nd_membership(
            &k3,
            &ColoredProperty::BipartiteColorOne { min_ordered: 6 },
            2,
            1
        )
        .unwrap());
        // the trivial property holds for every graph
        assert!(nd_membership(&k3, &ColoredProperty::Trivial, 2, 1).unwrap());
    }
}
