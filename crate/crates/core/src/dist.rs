//! Cut norm, cut-norm distances, edit distances and unlabeled-distance upper
//! bounds, for step kernels, graphs, colored digraphs, fractional colorings
//! and k-digraphons.
//!
//! Exact solvers enumerate one subset side and pick the optimal other side
//! greedily (which is optimal for a fixed side); beyond the size guard a
//! multi-start local search returns certified lower-bound witnesses flagged
//! `exact: false`. Every distance carries a witness that re-evaluates to the
//! reported value.

use crate::error::{Error, Result};
use crate::graph::{FractionalColoring, KColoredDigraph, SimpleGraph};
use crate::kernel::{kernel_of_graph, KDigraphon, StepKernel};
use crate::property::GraphProperty;
use crate::sample::RngSpec;
use rand::Rng;
use rayon::prelude::*;

/// Exact subset enumeration is guarded to this many steps.
pub const EXACT_STEP_LIMIT: usize = 24;
/// Exhaustive bijection search in [`delta_cut_upper`] is guarded to this size.
pub const EXACT_PERM_LIMIT: usize = 8;
/// Blow-ups in the alignment heuristic are guarded to this many steps.
pub const BLOWUP_LIMIT: usize = 256;

/// Internal seed for heuristic restarts; fixed so heuristics are pure
/// functions of their inputs.
const SEARCH_SEED: u64 = 0x9E3779B97F4A7C15;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutNormMode {
    /// Enumerate all row subsets (guarded by [`EXACT_STEP_LIMIT`]).
    Exact,
    /// Multi-start single-flip local search; returns a lower bound.
    Heuristic,
    /// Exact when within the guard, heuristic otherwise.
    Auto,
}

#[derive(Debug, Clone, Copy)]
pub struct CutNormOptions {
    pub starts: usize,
    pub max_passes: usize,
}

impl Default for CutNormOptions {
    fn default() -> Self {
        CutNormOptions {
            starts: 32,
            max_passes: 8,
        }
    }
}

impl CutNormOptions {
    pub fn with_starts(starts: usize) -> Self {
        CutNormOptions {
            starts,
            ..Default::default()
        }
    }
}

/// Value and optimizing rectangle of a cut-norm computation.
#[derive(Debug, Clone, PartialEq)]
pub struct CutNormResult {
    pub value: f64,
    pub witness_s: Vec<usize>,
    pub witness_t: Vec<usize>,
    pub exact: bool,
}

impl CutNormResult {
    /// Re-evaluates |Σ_{i∈S, j∈T} v(i,j) μ_i μ_j| at the stored witness.
    pub fn evaluate(&self, w: &StepKernel) -> f64 {
        eval_rectangle(w, &self.witness_s, &self.witness_t)
    }
}

fn eval_rectangle(w: &StepKernel, s: &[usize], t: &[usize]) -> f64 {
    let widths = w.partition().widths();
    let mut sum = 0.0;
    for &i in s {
        for &j in t {
            sum += w.value(i, j) * widths[i] * widths[j];
        }
    }
    sum.abs()
}

/// ‖W‖_□ = max over step subsets S, T of |Σ_{i∈S, j∈T} v(i,j) μ_i μ_j|.
/// For step functions this sup over measurable sets is attained on unions of
/// steps, so the subset maximum is the true cut norm.
pub fn cut_norm(w: &StepKernel, mode: CutNormMode) -> Result<CutNormResult> {
    cut_norm_with(w, mode, &CutNormOptions::default())
}

pub fn cut_norm_with(
    w: &StepKernel,
    mode: CutNormMode,
    opts: &CutNormOptions,
) -> Result<CutNormResult> {
    let m = w.steps();
    match mode {
        CutNormMode::Exact => {
            if m > EXACT_STEP_LIMIT {
                return Err(Error::size_guard(format!(
                    "exact cut norm is limited to {EXACT_STEP_LIMIT} steps, got {m}"
                )));
            }
            Ok(cut_norm_exact(w))
        }
        CutNormMode::Heuristic => Ok(cut_norm_heuristic(w, opts)),
        CutNormMode::Auto => {
            if m <= EXACT_STEP_LIMIT {
                Ok(cut_norm_exact(w))
            } else {
                Ok(cut_norm_heuristic(w, opts))
            }
        }
    }
}

/// Straightforward reference solver: full 2^m × 2^m enumeration of both
/// sides via subset-sum tables. Independent of the production solver; kept
/// as the oracle it is checked against.
pub fn cut_norm_reference(w: &StepKernel) -> Result<f64> {
    let m = w.steps();
    if m > 12 {
        return Err(Error::size_guard(
            "reference cut norm enumerates 4^m pairs; use m <= 12",
        ));
    }
    let widths = w.partition().widths();
    let mut best = 0.0f64;
    for s_mask in 0u32..(1 << m) {
        // column sums for this row set
        let mut col = vec![0.0f64; m];
        for i in 0..m {
            if s_mask >> i & 1 == 1 {
                for (j, c) in col.iter_mut().enumerate() {
                    *c += w.value(i, j) * widths[i] * widths[j];
                }
            }
        }
        // subset sums over all T via dynamic programming on bits
        let mut sums = vec![0.0f64; 1 << m];
        for t_mask in 1u32..(1 << m) {
            let low = t_mask.trailing_zeros() as usize;
            sums[t_mask as usize] = sums[(t_mask & (t_mask - 1)) as usize] + col[low];
        }
        for &v in &sums {
            best = best.max(v.abs());
        }
    }
    Ok(best)
}

struct BestRect {
    value: f64,
    s_mask: u32,
    t_mask: u32,
}

impl BestRect {
    fn better_than(&self, other: &BestRect) -> bool {
        if self.value != other.value {
            return self.value > other.value;
        }
        (self.s_mask, self.t_mask) < (other.s_mask, other.t_mask)
    }
}

fn cut_norm_exact(w: &StepKernel) -> CutNormResult {
    let m = w.steps();
    if w.values().iter().all(|&v| v == 0.0) {
        return CutNormResult {
            value: 0.0,
            witness_s: Vec::new(),
            witness_t: Vec::new(),
            exact: true,
        };
    }
    let best = if m > 16 {
        // Split on the high bits; each task enumerates the low bits in Gray
        // order starting from its prefix.
        let low_bits = 16usize;
        let prefixes = 1u32 << (m - low_bits);
        (0..prefixes)
            .into_par_iter()
            .map(|p| enumerate_rows(w, (p as u64) << low_bits, low_bits))
            .reduce(
                || BestRect {
                    value: 0.0,
                    s_mask: 0,
                    t_mask: 0,
                },
                |a, b| if b.better_than(&a) { b } else { a },
            )
    } else {
        enumerate_rows(w, 0, m)
    };
    let s = mask_to_set(best.s_mask, m);
    let t = mask_to_set(best.t_mask, m);
    let value = eval_rectangle(w, &s, &t);
    CutNormResult {
        value,
        witness_s: s,
        witness_t: t,
        exact: true,
    }
}

/// Enumerates row subsets `prefix | gray(low)` over `low_bits` free bits,
/// maintaining column sums incrementally.
fn enumerate_rows(w: &StepKernel, prefix: u64, low_bits: usize) -> BestRect {
    let m = w.steps();
    let widths = w.partition().widths();
    let mut col = vec![0.0f64; m];
    let current = prefix; // gray(0) = 0 on the low bits
    for i in 0..m {
        if current >> i & 1 == 1 {
            add_row(w, widths, &mut col, i, 1.0);
        }
    }
    let mut best = BestRect {
        value: 0.0,
        s_mask: 0,
        t_mask: 0,
    };
    score_columns(&col, widths, current as u32, &mut best);
    for g in 1u64..(1u64 << low_bits) {
        let bit = g.trailing_zeros() as usize;
        let gray = g ^ (g >> 1);
        let next = prefix | gray;
        let sign = if next >> bit & 1 == 1 { 1.0 } else { -1.0 };
        add_row(w, widths, &mut col, bit, sign);
        score_columns(&col, widths, next as u32, &mut best);
    }
    best
}

#[inline]
fn add_row(w: &StepKernel, widths: &[f64], col: &mut [f64], row: usize, sign: f64) {
    let wi = widths[row] * sign;
    for (j, c) in col.iter_mut().enumerate() {
        *c += w.value(row, j) * wi;
    }
}

/// For fixed row sums, the best column set takes all positive (or all
/// negative) weighted sums; ties at zero are excluded.
#[inline]
fn score_columns(col: &[f64], widths: &[f64], s_mask: u32, best: &mut BestRect) {
    let mut pos = 0.0f64;
    let mut neg = 0.0f64;
    let mut pos_mask = 0u32;
    let mut neg_mask = 0u32;
    for (j, (&c, &wj)) in col.iter().zip(widths).enumerate() {
        let d = c * wj;
        if d > 0.0 {
            pos += d;
            pos_mask |= 1 << j;
        } else if d < 0.0 {
            neg += d;
            neg_mask |= 1 << j;
        }
    }
    let (value, t_mask) = if pos >= -neg {
        (pos, pos_mask)
    } else {
        (-neg, neg_mask)
    };
    let cand = BestRect {
        value,
        s_mask,
        t_mask,
    };
    if cand.better_than(best) {
        *best = cand;
    }
}

fn mask_to_set(mask: u32, m: usize) -> Vec<usize> {
    (0..m).filter(|&i| mask >> i & 1 == 1).collect()
}

fn cut_norm_heuristic(w: &StepKernel, opts: &CutNormOptions) -> CutNormResult {
    let m = w.steps();
    let widths = w.partition().widths();
    let starts = opts.starts.max(1);
    let results: Vec<(f64, Vec<bool>)> = (0..starts)
        .into_par_iter()
        .map(|start| {
            let mut s = vec![false; m];
            if start == 0 {
                // deterministic start: rows with positive weighted row sum
                for (i, slot) in s.iter_mut().enumerate() {
                    let row_sum: f64 = (0..m).map(|j| w.value(i, j) * widths[j]).sum();
                    *slot = row_sum > 0.0;
                }
            } else {
                let mut rng = RngSpec::new(SEARCH_SEED, start as u64).rng();
                for slot in s.iter_mut() {
                    *slot = rng.random::<bool>();
                }
            }
            local_search(w, widths, &mut s, opts.max_passes);
            let obj = greedy_objective(w, widths, &s).0;
            (obj, s)
        })
        .collect();
    let (_, best_s) = results
        .into_iter()
        .max_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal))
        .unwrap();
    let (_, t) = greedy_objective(w, widths, &best_s);
    let s: Vec<usize> = (0..m).filter(|&i| best_s[i]).collect();
    let value = eval_rectangle(w, &s, &t);
    CutNormResult {
        value,
        witness_s: s,
        witness_t: t,
        exact: false,
    }
}

/// Single-flip hill climbing on the row set, re-picking the greedy column
/// side after every move.
fn local_search(w: &StepKernel, widths: &[f64], s: &mut [bool], max_passes: usize) {
    let m = s.len();
    let mut col = vec![0.0f64; m];
    for (i, &on) in s.iter().enumerate() {
        if on {
            add_row(w, widths, &mut col, i, 1.0);
        }
    }
    let mut current = column_objective(&col, widths);
    for _ in 0..max_passes {
        let mut improved = false;
        for i in 0..m {
            let sign = if s[i] { -1.0 } else { 1.0 };
            let wi = widths[i] * sign;
            let mut pos = 0.0f64;
            let mut neg = 0.0f64;
            for j in 0..m {
                let d = (col[j] + w.value(i, j) * wi) * widths[j];
                if d > 0.0 {
                    pos += d;
                } else {
                    neg += d;
                }
            }
            let cand = pos.max(-neg);
            if cand > current + 1e-15 {
                add_row(w, widths, &mut col, i, sign);
                s[i] = !s[i];
                current = cand;
                improved = true;
            }
        }
        if !improved {
            break;
        }
    }
}

fn column_objective(col: &[f64], widths: &[f64]) -> f64 {
    let mut pos = 0.0f64;
    let mut neg = 0.0f64;
    for (&c, &wj) in col.iter().zip(widths) {
        let d = c * wj;
        if d > 0.0 {
            pos += d;
        } else {
            neg += d;
        }
    }
    pos.max(-neg)
}

fn greedy_objective(w: &StepKernel, widths: &[f64], s: &[bool]) -> (f64, Vec<usize>) {
    let m = s.len();
    let mut col = vec![0.0f64; m];
    for (i, &on) in s.iter().enumerate() {
        if on {
            add_row(w, widths, &mut col, i, 1.0);
        }
    }
    let mut pos = 0.0f64;
    let mut neg = 0.0f64;
    let mut pos_t = Vec::new();
    let mut neg_t = Vec::new();
    for j in 0..m {
        let d = col[j] * widths[j];
        if d > 0.0 {
            pos += d;
            pos_t.push(j);
        } else if d < 0.0 {
            neg += d;
            neg_t.push(j);
        }
    }
    if pos >= -neg {
        (pos, pos_t)
    } else {
        (-neg, neg_t)
    }
}

/// A distance value together with its exactness flag.
#[derive(Debug, Clone, PartialEq)]
pub struct Distance {
    pub value: f64,
    pub exact: bool,
}

/// Labeled cut-norm distance of two graphs on the same node set:
/// max over S, T ⊆ V of |e_G(S,T) - e_G'(S,T)| / n², where e_G(S,T) is the
/// bilinear count Σ_{i∈S, j∈T} A_ij (pairs in the overlap counted in both
/// orders). This convention makes the value coincide with ‖W_G - W_G'‖_□
/// exactly.
pub fn cut_distance_graphs_labeled(
    g: &SimpleGraph,
    g2: &SimpleGraph,
    mode: CutNormMode,
) -> Result<CutNormResult> {
    if g.n() != g2.n() {
        return Err(Error::invalid(format!(
            "node-set mismatch: {} vs {}",
            g.n(),
            g2.n()
        )));
    }
    let d = kernel_of_graph(g).sub(&kernel_of_graph(g2));
    cut_norm(&d, mode)
}

/// d_□ of two k-digraphons: Σ_h ‖U_h - W_h‖_□ on the common refinement.
pub fn cut_distance_digraphons(
    a: &KDigraphon,
    b: &KDigraphon,
    mode: CutNormMode,
) -> Result<Distance> {
    cut_distance_digraphons_with(a, b, mode, &CutNormOptions::default())
}

pub fn cut_distance_digraphons_with(
    a: &KDigraphon,
    b: &KDigraphon,
    mode: CutNormMode,
    opts: &CutNormOptions,
) -> Result<Distance> {
    if a.k() != b.k() {
        return Err(Error::invalid("layer count mismatch"));
    }
    let mut total = 0.0;
    let mut exact = true;
    for c in 1..=a.k() {
        let diff = a.layer(c).sub(b.layer(c));
        let r = cut_norm_with(&diff, mode, opts)?;
        total += r.value;
        exact &= r.exact;
    }
    Ok(Distance {
        value: total,
        exact,
    })
}

/// d_□ of two fractional colorings on the same node set:
/// (1/n²) Σ_h max_{S,T} |Σ_{i∈S, j∈T} (β_h - β'_h)(i,j)|.
pub fn cut_distance_fractional(
    h: &FractionalColoring,
    h2: &FractionalColoring,
    mode: CutNormMode,
) -> Result<Distance> {
    cut_distance_fractional_with(h, h2, mode, &CutNormOptions::default())
}

pub fn cut_distance_fractional_with(
    h: &FractionalColoring,
    h2: &FractionalColoring,
    mode: CutNormMode,
    opts: &CutNormOptions,
) -> Result<Distance> {
    if h.n() != h2.n() || h.k() != h2.k() {
        return Err(Error::invalid("shape mismatch between fractional colorings"));
    }
    let n = h.n();
    let mut total = 0.0;
    let mut exact = true;
    for c in 1..=h.k() {
        let mut values = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    values[i * n + j] = h.weight(c, i, j) - h2.weight(c, i, j);
                }
            }
        }
        let diff = StepKernel::from_grid(values, 1.0 + 1e-9).unwrap();
        let r = cut_norm_with(&diff, mode, opts)?;
        total += r.value;
        exact &= r.exact;
    }
    Ok(Distance {
        value: total,
        exact,
    })
}

/// Edit distance of two graphs on the same node set: |E Δ E'| / n².
pub fn edit_distance_graphs(g: &SimpleGraph, g2: &SimpleGraph) -> Result<f64> {
    if g.n() != g2.n() {
        return Err(Error::invalid("node-set mismatch"));
    }
    let n = g.n();
    let mut diff = 0usize;
    for i in 0..n {
        for j in (i + 1)..n {
            if g.has_edge(i, j) != g2.has_edge(i, j) {
                diff += 1;
            }
        }
    }
    Ok(diff as f64 / (n * n) as f64)
}

/// Edit distance of two colored digraphs: ordered pairs colored differently
/// over n².
pub fn edit_distance_colored(l: &KColoredDigraph, l2: &KColoredDigraph) -> Result<f64> {
    if l.n() != l2.n() || l.k() != l2.k() {
        return Err(Error::invalid("shape mismatch between colored digraphs"));
    }
    let n = l.n();
    let mut diff = 0usize;
    for i in 0..n {
        for j in 0..n {
            if i != j && l.color(i, j) != l2.color(i, j) {
                diff += 1;
            }
        }
    }
    Ok(diff as f64 / (n * n) as f64)
}

/// Edit distance of two k-digraphons: Σ_h ‖U_h - W_h‖_1.
pub fn edit_distance_digraphons(a: &KDigraphon, b: &KDigraphon) -> Result<f64> {
    if a.k() != b.k() {
        return Err(Error::invalid("layer count mismatch"));
    }
    let mut total = 0.0;
    for c in 1..=a.k() {
        total += a.layer(c).sub(b.layer(c)).l1_norm();
    }
    Ok(total)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeltaMode {
    /// Minimum of the labeled distance over all vertex bijections
    /// (equal sizes, guarded by [`EXACT_PERM_LIMIT`]).
    ExactPerm,
    /// Blow up to a common size and locally search step relabelings.
    AlignHeuristic,
}

/// An upper bound on the unlabeled cut distance δ_□, with the achieving
/// relabeling. Even the exhaustive mode only bounds the measure-theoretic
/// infimum: bijections are a subfamily of measure-preserving maps.
#[derive(Debug, Clone, PartialEq)]
pub struct DeltaCutBound {
    pub value: f64,
    /// Relabeling of the second graph achieving the bound (on the blown-up
    /// node set in heuristic mode).
    pub permutation: Vec<usize>,
    /// True when every bijection was tried.
    pub exhaustive: bool,
}

/// Upper bound on δ_□(G, G') = δ_□(W_G, W_G').
pub fn delta_cut_upper(
    g: &SimpleGraph,
    g2: &SimpleGraph,
    mode: DeltaMode,
) -> Result<DeltaCutBound> {
    match mode {
        DeltaMode::ExactPerm => {
            if g.n() != g2.n() {
                return Err(Error::invalid("exact-perm mode needs equal node counts"));
            }
            if g.n() > EXACT_PERM_LIMIT {
                return Err(Error::size_guard(format!(
                    "exact-perm mode enumerates n! bijections; limited to n <= {EXACT_PERM_LIMIT}"
                )));
            }
            Ok(delta_exact_perm(g, g2))
        }
        DeltaMode::AlignHeuristic => delta_align_heuristic(g, g2),
    }
}

fn delta_exact_perm(g: &SimpleGraph, g2: &SimpleGraph) -> DeltaCutBound {
    let n = g.n();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best_value = f64::INFINITY;
    let mut best_perm = perm.clone();
    let evaluate = |perm: &[usize], best_value: &mut f64, best_perm: &mut Vec<usize>| {
        let relabeled = g2.relabel(perm).unwrap();
        let d = cut_distance_graphs_labeled(g, &relabeled, CutNormMode::Exact)
            .unwrap()
            .value;
        if d < *best_value {
            *best_value = d;
            *best_perm = perm.to_vec();
        }
    };
    evaluate(&perm, &mut best_value, &mut best_perm);
    // Heap's algorithm over all permutations.
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n && best_value > 0.0 {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            evaluate(&perm, &mut best_value, &mut best_perm);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    DeltaCutBound {
        value: best_value,
        permutation: best_perm,
        exhaustive: true,
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn delta_align_heuristic(g: &SimpleGraph, g2: &SimpleGraph) -> Result<DeltaCutBound> {
    let (n1, n2) = (g.n(), g2.n());
    if n1 == 0 || n2 == 0 {
        return Err(Error::invalid("empty graph in delta computation"));
    }
    let l = n1 / gcd(n1, n2) * n2;
    if l > BLOWUP_LIMIT {
        return Err(Error::size_guard(format!(
            "common blow-up has {l} nodes, limited to {BLOWUP_LIMIT}"
        )));
    }
    let a = g.blowup(l / n1);
    let b = g2.blowup(l / n2);

    // Degree-profile seed: align the degree-sorted orders of both blow-ups.
    let order = |h: &SimpleGraph| {
        let mut idx: Vec<usize> = (0..l).collect();
        idx.sort_by_key(|&v| (h.degree(v), v));
        idx
    };
    let oa = order(&a);
    let ob = order(&b);
    let mut perm = vec![0usize; l];
    for r in 0..l {
        perm[oa[r]] = ob[r];
    }

    // Pair-swap hill climbing on the disagreement count (a cheap surrogate
    // for the cut norm).
    for _pass in 0..4 {
        let mut improved = false;
        for x in 0..l {
            for y in (x + 1)..l {
                let mut delta = 0isize;
                for z in 0..l {
                    if z == x || z == y {
                        continue;
                    }
                    let before = (a.has_edge(x, z) != b.has_edge(perm[x], perm[z])) as isize
                        + (a.has_edge(y, z) != b.has_edge(perm[y], perm[z])) as isize;
                    let after = (a.has_edge(x, z) != b.has_edge(perm[y], perm[z])) as isize
                        + (a.has_edge(y, z) != b.has_edge(perm[x], perm[z])) as isize;
                    delta += after - before;
                }
                if delta < 0 {
                    perm.swap(x, y);
                    improved = true;
                }
            }
        }
        if !improved {
            break;
        }
    }

    // Final value under the cut norm; the identity relabeling is always a
    // candidate too.
    let value_of = |p: &[usize]| -> Result<f64> {
        let relabeled = b.relabel(p)?;
        Ok(cut_distance_graphs_labeled(&a, &relabeled, CutNormMode::Auto)?.value)
    };
    let identity: Vec<usize> = (0..l).collect();
    let v_search = value_of(&perm)?;
    let v_id = value_of(&identity)?;
    let (value, permutation) = if v_id < v_search {
        (v_id, identity)
    } else {
        (v_search, perm)
    };
    Ok(DeltaCutBound {
        value,
        permutation,
        exhaustive: false,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PropertyMetric {
    EditDistance,
    DeltaCut,
}

/// Distance from a graph to the nearest member of a registry property,
/// under edit distance (closed forms / exact solvers, heuristic beyond the
/// guards) or as a flagged δ_□ upper bound against the registry's witness
/// members.
pub fn distance_to_property(
    g: &SimpleGraph,
    p: &GraphProperty,
    metric: PropertyMetric,
) -> Result<Distance> {
    match metric {
        PropertyMetric::EditDistance => p.edit_distance_from(g),
        PropertyMetric::DeltaCut => {
            let members = p.witness_members(g.n())?;
            if members.is_empty() {
                return Err(Error::invalid(
                    "property has no witness members at this size",
                ));
            }
            let mut best = f64::INFINITY;
            for member in &members {
                let mode = if member.n() == g.n() && g.n() <= EXACT_PERM_LIMIT {
                    DeltaMode::ExactPerm
                } else {
                    DeltaMode::AlignHeuristic
                };
                let bound = delta_cut_upper(g, member, mode)?;
                best = best.min(bound.value);
            }
            Ok(Distance {
                value: best,
                exact: false,
            })
        }
    }
}
