//! Step-function kernels on interval partitions of the unit interval,
//! k-digraphons, the
//! averaging (stepping) operator and the pullback of a digraphon coloring
//! onto a graph.

use crate::error::{Error, Result};
use crate::graph::{format_float, FractionalColoring, KColoredDigraph, SimpleGraph};
use std::fmt::Write as _;
use std::path::Path;

/// Tolerance for layer sums and symmetry checks.
pub const LAYER_SUM_TOL: f64 = 1e-9;
/// Below this, a denominator cell in the pullback is treated as degenerate.
pub const DEGENERATE_EPS: f64 = 1e-12;
/// Partition classes thinner than this are rejected as degenerate.
pub const MIN_CLASS_MEASURE: f64 = 1e-12;

/// Interval partition of the unit interval, described by strictly increasing interior
/// breakpoints. The equal partition is the distinguished case.
#[derive(Debug, Clone, PartialEq)]
pub struct Partition {
    widths: Vec<f64>,
}

impl Partition {
    /// Equal partition into `n` intervals.
    pub fn equal(n: usize) -> Self {
        assert!(n >= 1, "partition needs at least one class");
        Partition {
            widths: vec![1.0 / n as f64; n],
        }
    }

    /// Partition from interior breakpoints in (0,1), strictly increasing.
    pub fn from_breakpoints(breaks: &[f64]) -> Result<Self> {
        let mut widths = Vec::with_capacity(breaks.len() + 1);
        let mut prev = 0.0;
        for &b in breaks {
            if !(b > 0.0 && b < 1.0) {
                return Err(Error::invalid(format!("breakpoint {b} outside (0, 1)")));
            }
            if b <= prev {
                return Err(Error::invalid("breakpoints must be strictly increasing"));
            }
            widths.push(b - prev);
            prev = b;
        }
        widths.push(1.0 - prev);
        if widths.iter().any(|&w| w < MIN_CLASS_MEASURE) {
            return Err(Error::invalid("degenerate partition class (measure ~ 0)"));
        }
        Ok(Partition { widths })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.widths.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.widths.is_empty()
    }

    #[inline]
    pub fn width(&self, i: usize) -> f64 {
        self.widths[i]
    }

    pub fn widths(&self) -> &[f64] {
        &self.widths
    }

    pub fn is_uniform(&self) -> bool {
        self.widths.iter().all(|&w| w == self.widths[0])
    }

    /// Cumulative right endpoints; last entry is 1 (up to rounding).
    pub fn cumulative(&self) -> Vec<f64> {
        let mut acc = 0.0;
        self.widths
            .iter()
            .map(|w| {
                acc += w;
                acc
            })
            .collect()
    }

    /// Index of the class containing x in [0,1).
    pub fn locate(&self, x: f64) -> usize {
        let cum = self.cumulative();
        let idx = cum.partition_point(|&c| c <= x);
        idx.min(self.len() - 1)
    }

    /// Common refinement: the result's classes, and for each class the index
    /// of the containing class in `self` and in `other`.
    pub fn refine(&self, other: &Partition) -> (Partition, Vec<usize>, Vec<usize>) {
        let a = self.cumulative();
        let b = other.cumulative();
        let mut widths = Vec::new();
        let mut into_a = Vec::new();
        let mut into_b = Vec::new();
        let (mut ia, mut ib) = (0usize, 0usize);
        let mut prev = 0.0;
        while ia < a.len() && ib < b.len() {
            let ea = a[ia];
            let eb = b[ib];
            let edge = ea.min(eb);
            let w = edge - prev;
            if w > MIN_CLASS_MEASURE {
                widths.push(w);
                into_a.push(ia);
                into_b.push(ib);
            } else if let Some(last) = widths.last_mut() {
                // Merge a sliver caused by nearly-equal breakpoints.
                *last += w;
            }
            prev = edge;
            if (ea - edge).abs() <= f64::EPSILON {
                ia += 1;
            }
            if (eb - edge).abs() <= f64::EPSILON {
                ib += 1;
            }
        }
        (Partition { widths }, into_a, into_b)
    }
}

/// Step function on the unit square, constant on the rectangles of `partition` ×
/// `partition`, with a declared sup-norm bound.
#[derive(Debug, Clone, PartialEq)]
pub struct StepKernel {
    partition: Partition,
    values: Vec<f64>, // m*m row-major
    bound: f64,
}

impl StepKernel {
    /// Kernel on the equal partition from a row-major grid.
    pub fn from_grid(values: Vec<f64>, bound: f64) -> Result<Self> {
        let m = (values.len() as f64).sqrt().round() as usize;
        if m * m != values.len() {
            return Err(Error::invalid("grid is not square"));
        }
        if m == 0 {
            return Err(Error::invalid("empty kernel grid"));
        }
        StepKernel::on_partition(Partition::equal(m), values, bound)
    }

    pub fn on_partition(partition: Partition, values: Vec<f64>, bound: f64) -> Result<Self> {
        let m = partition.len();
        if values.len() != m * m {
            return Err(Error::invalid("value grid does not match partition size"));
        }
        if bound < 0.0 {
            return Err(Error::invalid("bound must be nonnegative"));
        }
        if values.iter().any(|v| v.abs() > bound + 1e-12) {
            return Err(Error::invalid("kernel value exceeds declared bound"));
        }
        Ok(StepKernel {
            partition,
            values,
            bound,
        })
    }

    pub fn constant(c: f64) -> Self {
        StepKernel {
            partition: Partition::equal(1),
            values: vec![c],
            bound: c.abs(),
        }
    }

    #[inline]
    pub fn steps(&self) -> usize {
        self.partition.len()
    }

    #[inline]
    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.steps() + j]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn bound(&self) -> f64 {
        self.bound
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    /// Value at a point of [0,1)².
    pub fn at(&self, x: f64, y: f64) -> f64 {
        let i = self.partition.locate(x);
        let j = self.partition.locate(y);
        self.value(i, j)
    }

    /// Plain average of the grid entries (uniform kernels only): Σv / m².
    pub fn grid_mean(&self) -> f64 {
        let m = self.steps();
        self.values.iter().sum::<f64>() / (m * m) as f64
    }

    /// Maximum |v(i,j) - v(j,i)| over all cells.
    pub fn max_asymmetry(&self) -> f64 {
        let m = self.steps();
        let mut worst = 0.0f64;
        for i in 0..m {
            for j in (i + 1)..m {
                worst = worst.max((self.value(i, j) - self.value(j, i)).abs());
            }
        }
        worst
    }

    /// L1 norm: Σ |v(i,j)| μ_i μ_j.
    pub fn l1_norm(&self) -> f64 {
        let m = self.steps();
        let w = self.partition.widths();
        let mut sum = 0.0;
        for i in 0..m {
            for j in 0..m {
                sum += self.value(i, j).abs() * w[i] * w[j];
            }
        }
        sum
    }

    /// Pointwise combination on the common refinement of two kernels.
    pub fn zip_with(&self, other: &StepKernel, f: impl Fn(f64, f64) -> f64) -> StepKernel {
        if self.partition == other.partition {
            let values: Vec<f64> = self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| f(a, b))
                .collect();
            let bound = values.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
            return StepKernel {
                partition: self.partition.clone(),
                values,
                bound,
            };
        }
        let (part, into_a, into_b) = self.partition.refine(&other.partition);
        let m = part.len();
        let mut values = Vec::with_capacity(m * m);
        for i in 0..m {
            for j in 0..m {
                let a = self.value(into_a[i], into_a[j]);
                let b = other.value(into_b[i], into_b[j]);
                values.push(f(a, b));
            }
        }
        let bound = values.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
        StepKernel {
            partition: part,
            values,
            bound,
        }
    }

    pub fn sub(&self, other: &StepKernel) -> StepKernel {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &StepKernel) -> StepKernel {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn scale(&self, c: f64) -> StepKernel {
        StepKernel {
            partition: self.partition.clone(),
            values: self.values.iter().map(|v| v * c).collect(),
            bound: self.bound * c.abs(),
        }
    }

    /// Parses the text format: header `m bound`, then m rows of m floats.
    /// Only kernels on the equal partition have a file form.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (line_no, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "empty kernel file"))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(Error::parse(line_no, "expected header `m bound`"));
        }
        let m: usize = fields[0]
            .parse()
            .map_err(|_| Error::parse(line_no, "cannot parse step count"))?;
        let bound: f64 = fields[1]
            .parse()
            .map_err(|_| Error::parse(line_no, "cannot parse bound"))?;
        crate::graph::check_dense_size(m as u128 * m as u128, "step kernel")
            .map_err(|e| Error::parse(line_no, e.to_string()))?;
        let values = parse_grid(&mut lines, m, m)?;
        StepKernel::from_grid(values, bound).map_err(|e| Error::parse(1, e.to_string()))
    }

    pub fn to_text(&self) -> Result<String> {
        if !self.partition.is_uniform() {
            return Err(Error::invalid(
                "only kernels on the equal partition can be serialized",
            ));
        }
        let m = self.steps();
        let mut s = String::new();
        let _ = writeln!(s, "{} {}", m, format_float(self.bound));
        for i in 0..m {
            let row: Vec<String> = (0..m).map(|j| format_float(self.value(i, j))).collect();
            let _ = writeln!(s, "{}", row.join(" "));
        }
        Ok(s)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        Ok(std::fs::write(path, self.to_text()?)?)
    }
}

/// 0/1 kernel of a simple graph on the equal partition S_n; zero diagonal.
pub fn kernel_of_graph(g: &SimpleGraph) -> StepKernel {
    let n = g.n();
    let mut values = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            if i != j && g.has_edge(i, j) {
                values[i * n + j] = 1.0;
            }
        }
    }
    StepKernel::from_grid(values, 1.0).unwrap()
}

/// Averages `w` over the rectangles of `target`: the result is the step
/// function with value (1/λ(S_i)λ(S_j)) ∫_{S_i×S_j} W on each rectangle.
///
/// When every contributing cell holds the same value the average returns that
/// value bit-exactly, so averaging is idempotent.
pub fn average(w: &StepKernel, target: &Partition) -> Result<StepKernel> {
    if target.widths().iter().any(|&x| x < MIN_CLASS_MEASURE) {
        return Err(Error::invalid("degenerate partition class (measure ~ 0)"));
    }
    let (refined, into_target, into_w) = target.refine(w.partition());
    let q = target.len();
    // Overlap mass of each refined class, grouped by target class.
    let mut groups: Vec<Vec<(usize, f64)>> = vec![Vec::new(); q];
    for (r, &t) in into_target.iter().enumerate() {
        groups[t].push((into_w[r], refined.width(r)));
    }
    let mut values = Vec::with_capacity(q * q);
    for gi in &groups {
        for gj in &groups {
            values.push(average_cell(w, gi, gj));
        }
    }
    StepKernel::on_partition(target.clone(), values, w.bound() + 1e-12)
}

fn average_cell(w: &StepKernel, gi: &[(usize, f64)], gj: &[(usize, f64)]) -> f64 {
    let first = w.value(gi[0].0, gj[0].0);
    let mut all_equal = true;
    let mut integral = 0.0;
    let mut mass = 0.0;
    for &(i, wi) in gi {
        for &(j, wj) in gj {
            let v = w.value(i, j);
            if v != first {
                all_equal = false;
            }
            integral += v * wi * wj;
            mass += wi * wj;
        }
    }
    if all_equal {
        first
    } else {
        integral / mass
    }
}

/// k step kernels on a common partition, pointwise summing to 1: the limit
/// object of k-colored digraph sequences.
#[derive(Debug, Clone, PartialEq)]
pub struct KDigraphon {
    layers: Vec<StepKernel>,
}

impl KDigraphon {
    pub fn new(layers: Vec<StepKernel>) -> Result<Self> {
        if layers.is_empty() {
            return Err(Error::invalid("a k-digraphon needs at least one layer"));
        }
        let part = layers[0].partition().clone();
        let m = part.len();
        for l in &layers {
            if l.partition() != &part {
                return Err(Error::invalid("layers must share one partition"));
            }
        }
        for cell in 0..m * m {
            let mut sum = 0.0;
            for l in &layers {
                let v = l.values()[cell];
                if !(-LAYER_SUM_TOL..=1.0 + LAYER_SUM_TOL).contains(&v) {
                    return Err(Error::invalid(format!("layer value {v} outside [0, 1]")));
                }
                sum += v;
            }
            if (sum - 1.0).abs() > LAYER_SUM_TOL {
                return Err(Error::invalid(format!(
                    "layer values sum to {sum} at cell {cell}, expected 1"
                )));
            }
        }
        Ok(KDigraphon { layers })
    }

    #[inline]
    pub fn k(&self) -> u8 {
        self.layers.len() as u8
    }

    #[inline]
    pub fn steps(&self) -> usize {
        self.layers[0].steps()
    }

    pub fn partition(&self) -> &Partition {
        self.layers[0].partition()
    }

    /// Layer of color `c` (1-based).
    pub fn layer(&self, c: u8) -> &StepKernel {
        &self.layers[(c - 1) as usize]
    }

    pub fn layers(&self) -> &[StepKernel] {
        &self.layers
    }

    /// Sum of the first `m` layers (the shadow graphon when symmetric).
    pub fn head_sum(&self, m: u8) -> StepKernel {
        let size = self.steps();
        let mut values = vec![0.0; size * size];
        for c in 1..=m {
            for (acc, v) in values.iter_mut().zip(self.layer(c).values()) {
                *acc += v;
            }
        }
        StepKernel::on_partition(self.partition().clone(), values, 1.0 + 1e-9).unwrap()
    }

    /// Parses the text format: header `k m`, then k blocks of m×m floats.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (line_no, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "empty digraphon file"))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(Error::parse(line_no, "expected header `k m`"));
        }
        let k: usize = fields[0]
            .parse()
            .map_err(|_| Error::parse(line_no, "cannot parse layer count"))?;
        let m: usize = fields[1]
            .parse()
            .map_err(|_| Error::parse(line_no, "cannot parse step count"))?;
        crate::graph::check_dense_size(k as u128 * m as u128 * m as u128, "digraphon")
            .map_err(|e| Error::parse(line_no, e.to_string()))?;
        let mut layers = Vec::with_capacity(k);
        for _ in 0..k {
            let values = parse_grid(&mut lines, m, m)?;
            layers.push(
                StepKernel::from_grid(values, 1.0 + 1e-9).map_err(|e| Error::parse(1, e.to_string()))?,
            );
        }
        KDigraphon::new(layers).map_err(|e| Error::parse(1, e.to_string()))
    }

    pub fn to_text(&self) -> Result<String> {
        if !self.partition().is_uniform() {
            return Err(Error::invalid(
                "only digraphons on the equal partition can be serialized",
            ));
        }
        let m = self.steps();
        let mut s = String::new();
        let _ = writeln!(s, "{} {}", self.layers.len(), m);
        for l in &self.layers {
            for i in 0..m {
                let row: Vec<String> = (0..m).map(|j| format_float(l.value(i, j))).collect();
                let _ = writeln!(s, "{}", row.join(" "));
            }
        }
        Ok(s)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        Ok(std::fs::write(path, self.to_text()?)?)
    }
}

/// How to fill the (measure-vanishing) diagonal cells when a fractional
/// coloring or colored digraph is promoted to a k-digraphon.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DiagonalRule {
    /// 1/k on every layer.
    Uniform,
    /// 0 on layers `1..=m`, 1/(k-m) on the rest: the diagonal carries no
    /// shadow mass, which keeps aligned blow-up pullbacks exact.
    ShadowSplit { m: u8 },
}

impl DiagonalRule {
    fn weights(self, k: u8) -> Vec<f64> {
        match self {
            DiagonalRule::Uniform => vec![1.0 / k as f64; k as usize],
            DiagonalRule::ShadowSplit { m } => (1..=k)
                .map(|c| if c <= m { 0.0 } else { 1.0 / (k - m) as f64 })
                .collect(),
        }
    }
}

/// k-digraphon of a fractional coloring on the equal partition S_n, with the
/// uniform diagonal convention.
pub fn digraphon_of_fractional(h: &FractionalColoring) -> KDigraphon {
    digraphon_of_fractional_with(h, DiagonalRule::Uniform)
}

pub fn digraphon_of_fractional_with(h: &FractionalColoring, diag: DiagonalRule) -> KDigraphon {
    let n = h.n();
    let k = h.k();
    let dw = diag.weights(k);
    let mut layers = Vec::with_capacity(k as usize);
    for c in 1..=k {
        let mut values = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                values[i * n + j] = if i == j {
                    dw[(c - 1) as usize]
                } else {
                    h.weight(c, i, j)
                };
            }
        }
        layers.push(StepKernel::from_grid(values, 1.0 + 1e-9).unwrap());
    }
    KDigraphon::new(layers).unwrap()
}

/// Indicator digraphon of a colored digraph.
pub fn digraphon_of_digraph(l: &KColoredDigraph, diag: DiagonalRule) -> KDigraphon {
    digraphon_of_fractional_with(&FractionalColoring::indicator(l), diag)
}

/// Result of [`pullback_coloring`]; `degenerate_cells` counts ordered pairs
/// where the denominator vanished and the uniform fallback was used.
#[derive(Debug, Clone)]
pub struct Pullback {
    pub coloring: FractionalColoring,
    pub degenerate_cells: usize,
}

/// Pulls the coloring of a k-digraphon back onto a graph: with n = |V(F)| and
/// A the adjacency matrix,
///
///   β_c(i,j) = A_ij · W_c(i,j) / U(i,j)            for c <= m,
///   β_c(i,j) = (1 - A_ij) · W_c(i,j) / (1 - U(i,j)) for c > m,
///
/// where W_c and U = Σ_{c<=m} W_c are averaged over the equal partition S_n
/// first. U must be symmetric. Vanishing denominators fall back to the
/// uniform distribution on the allowed color block, and each weight vector is
/// renormalized to sum to exactly 1.
pub fn pullback_coloring(f: &SimpleGraph, w: &KDigraphon, m: u8) -> Result<Pullback> {
    let k = w.k();
    if m < 1 || m >= k {
        return Err(Error::invalid(format!("need 1 <= m < k, got m={m}, k={k}")));
    }
    let n = f.n();
    if n == 0 {
        return Err(Error::invalid("cannot pull back onto the empty graph"));
    }
    let u_raw = w.head_sum(m);
    let asym = u_raw.max_asymmetry();
    if asym > LAYER_SUM_TOL {
        return Err(Error::invalid(format!(
            "shadow graphon U is asymmetric (max asymmetry {asym:.3e})"
        )));
    }
    let target = Partition::equal(n);
    let averaged: Vec<StepKernel> = (1..=k)
        .map(|c| average(w.layer(c), &target))
        .collect::<Result<_>>()?;
    let u = average(&u_raw, &target)?;

    let kk = k as usize;
    let mut beta = vec![0.0; kk * n * n];
    let mut degenerate = 0usize;
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let uv = u.value(i, j);
            let edge = f.has_edge(i, j);
            let mut cell = vec![0.0; kk];
            if edge {
                if uv < DEGENERATE_EPS {
                    for (c, slot) in cell.iter_mut().enumerate().take(m as usize) {
                        let _ = c;
                        *slot = 1.0 / m as f64;
                    }
                    degenerate += 1;
                } else {
                    for c in 1..=m {
                        cell[(c - 1) as usize] = averaged[(c - 1) as usize].value(i, j) / uv;
                    }
                }
            } else if 1.0 - uv < DEGENERATE_EPS {
                for c in (m + 1)..=k {
                    cell[(c - 1) as usize] = 1.0 / (k - m) as f64;
                }
                degenerate += 1;
            } else {
                for c in (m + 1)..=k {
                    cell[(c - 1) as usize] = averaged[(c - 1) as usize].value(i, j) / (1.0 - uv);
                }
            }
            let sum: f64 = cell.iter().sum();
            if (sum - 1.0).abs() > LAYER_SUM_TOL {
                return Err(Error::invalid(format!(
                    "pullback weights at ({i},{j}) sum to {sum} before renormalization"
                )));
            }
            renormalize_exact(&mut cell);
            for c in 0..kk {
                beta[c * n * n + i * n + j] = cell[c];
            }
        }
    }
    let coloring = FractionalColoring::from_weights(n, k, beta)?;
    Ok(Pullback {
        coloring,
        degenerate_cells: degenerate,
    })
}

/// Scales a near-1 weight vector so it sums to 1.0 up to the last ulp:
/// divide by the current sum, then absorb the residual into the largest
/// entry until the sum is exact (or stops moving).
pub fn renormalize_exact(w: &mut [f64]) {
    let sum: f64 = w.iter().sum();
    if sum > 0.0 && sum != 1.0 {
        for v in w.iter_mut() {
            *v /= sum;
        }
    }
    for _ in 0..16 {
        let sum: f64 = w.iter().sum();
        if sum == 1.0 {
            return;
        }
        let (arg, _) = w
            .iter()
            .enumerate()
            .fold((0, f64::MIN), |acc, (i, &v)| if v > acc.1 { (i, v) } else { acc });
        let adjusted = w[arg] + (1.0 - sum);
        if adjusted == w[arg] {
            return;
        }
        w[arg] = adjusted;
    }
}

/// Registry of analytic kernels that enter the system via discretization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnalyticKernel {
    /// W(x,y) = x·y
    Product,
    /// W(x,y) = min(x,y)
    Min,
    /// W(x,y) = 1 if x + y >= 1, else 0
    Threshold,
}

impl AnalyticKernel {
    pub fn from_id(id: &str) -> Result<Self> {
        match id {
            "product" => Ok(AnalyticKernel::Product),
            "min" => Ok(AnalyticKernel::Min),
            "threshold" => Ok(AnalyticKernel::Threshold),
            other => Err(Error::UnknownId(format!("analytic kernel `{other}`"))),
        }
    }

    pub fn id(&self) -> &'static str {
        match self {
            AnalyticKernel::Product => "product",
            AnalyticKernel::Min => "min",
            AnalyticKernel::Threshold => "threshold",
        }
    }

    /// Exact cell means at the given resolution.
    pub fn discretize(&self, resolution: usize) -> StepKernel {
        let r = resolution;
        let mut values = vec![0.0; r * r];
        for a in 0..r {
            for b in 0..r {
                values[a * r + b] = self.cell_mean(a, b, r);
            }
        }
        StepKernel::from_grid(values, 1.0).unwrap()
    }

    fn cell_mean(&self, a: usize, b: usize, r: usize) -> f64 {
        let rf = r as f64;
        match self {
            AnalyticKernel::Product => {
                let mx = (2 * a + 1) as f64 / (2.0 * rf);
                let my = (2 * b + 1) as f64 / (2.0 * rf);
                mx * my
            }
            AnalyticKernel::Min => {
                if a < b {
                    (2 * a + 1) as f64 / (2.0 * rf)
                } else if b < a {
                    (2 * b + 1) as f64 / (2.0 * rf)
                } else {
                    // E[min(X,Y)] over [l, l+1/r)² for independent uniforms.
                    a as f64 / rf + 1.0 / (3.0 * rf)
                }
            }
            AnalyticKernel::Threshold => {
                // Area fraction of the cell above the line x + y = 1.
                let t = (r as isize - a as isize - b as isize) as f64;
                if t <= 0.0 {
                    1.0
                } else if t >= 2.0 {
                    0.0
                } else if t <= 1.0 {
                    1.0 - t * t / 2.0
                } else {
                    (2.0 - t) * (2.0 - t) / 2.0
                }
            }
        }
    }
}

fn parse_grid<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    rows: usize,
    cols: usize,
) -> Result<Vec<f64>> {
    let mut values = Vec::with_capacity(rows * cols);
    let mut seen = 0usize;
    for (line_no, line) in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != cols {
            return Err(Error::parse(line_no, format!("expected {cols} floats per row")));
        }
        for f in fields {
            values.push(
                f.parse::<f64>()
                    .map_err(|_| Error::parse(line_no, format!("cannot parse float `{f}`")))?,
            );
        }
        seen += 1;
        if seen == rows {
            return Ok(values);
        }
    }
    Err(Error::parse(1, format!("expected {rows} grid rows, got {seen}")))
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(idx, line)| {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            None
        } else {
            Some((idx + 1, trimmed))
        }
    })
}
