//! Seeded random constructions: induced-subgraph sampling, sampling from
//! (di)graphons, randomized rounding of fractional colorings, and graph
//! generators. Every sampler is a pure function of its inputs and an
//! [`RngSpec`], so trials reproduce bit-for-bit regardless of scheduling.

use crate::error::{Error, Result};
use crate::graph::{FractionalColoring, KColoredDigraph, SimpleGraph};
use crate::kernel::{KDigraphon, StepKernel};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A master seed plus a stream id. Distinct stream ids yield independent
/// streams of the same master seed; parallel trials each take their own
/// stream so results do not depend on execution order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RngSpec {
    pub master_seed: u64,
    pub stream_id: u64,
}

impl RngSpec {
    pub fn new(master_seed: u64, stream_id: u64) -> Self {
        RngSpec {
            master_seed,
            stream_id,
        }
    }

    pub fn stream(self, stream_id: u64) -> Self {
        RngSpec {
            master_seed: self.master_seed,
            stream_id,
        }
    }

    pub fn rng(self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master_seed);
        rng.set_stream(self.stream_id);
        rng
    }
}

/// Ordered sample of `r` distinct indices from `0..n` via partial
/// Fisher-Yates: O(r) extra space beyond the index table.
fn sample_tuple(n: usize, r: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..n).collect();
    for t in 0..r {
        let pick = t + rng.random_range(0..(n - t));
        idx.swap(t, pick);
    }
    idx.truncate(r);
    idx
}

/// Induced subgraph on a uniformly random ordered r-tuple of distinct nodes,
/// relabeled in draw order.
pub fn sample_induced(g: &SimpleGraph, r: usize, rng: RngSpec) -> Result<SimpleGraph> {
    if r < 1 || r > g.n() {
        return Err(Error::invalid(format!(
            "sample size {r} out of range 1..={}",
            g.n()
        )));
    }
    let mut rng = rng.rng();
    let tuple = sample_tuple(g.n(), r, &mut rng);
    g.induced(&tuple)
}

/// Colored variant of [`sample_induced`], preserving ordered-pair colors.
pub fn sample_induced_colored(
    l: &KColoredDigraph,
    r: usize,
    rng: RngSpec,
) -> Result<KColoredDigraph> {
    if r < 1 || r > l.n() {
        return Err(Error::invalid(format!(
            "sample size {r} out of range 1..={}",
            l.n()
        )));
    }
    let mut rng = rng.rng();
    let tuple = sample_tuple(l.n(), r, &mut rng);
    l.induced(&tuple)
}

/// Samples an r-node k-colored digraph from a k-digraphon: r uniform latent
/// points, then every ordered pair colored independently with the layer
/// probabilities at its cell.
pub fn sample_from_digraphon(w: &KDigraphon, r: usize, rng: RngSpec) -> Result<KColoredDigraph> {
    if r < 1 {
        return Err(Error::invalid("sample size must be >= 1"));
    }
    let mut rng = rng.rng();
    let cells: Vec<usize> = (0..r)
        .map(|_| w.partition().locate(rng.random::<f64>()))
        .collect();
    let k = w.k();
    let mut grid = vec![0u8; r * r];
    for i in 0..r {
        for j in 0..r {
            if i == j {
                continue;
            }
            let u: f64 = rng.random();
            let mut acc = 0.0;
            let mut chosen = k;
            for c in 1..=k {
                acc += w.layer(c).value(cells[i], cells[j]).max(0.0);
                if u < acc {
                    chosen = c;
                    break;
                }
            }
            grid[i * r + j] = chosen;
        }
    }
    KColoredDigraph::from_grid(r, k, grid)
}

/// Samples a W-random graph: n uniform latent points, then each unordered
/// pair is an edge independently with probability U at its cell.
pub fn sample_graph_from_graphon(u: &StepKernel, n: usize, rng: RngSpec) -> Result<SimpleGraph> {
    let asym = u.max_asymmetry();
    if asym > 1e-9 {
        return Err(Error::invalid(format!(
            "graphon must be symmetric (max asymmetry {asym:.3e})"
        )));
    }
    if u.values().iter().any(|&v| !(-1e-9..=1.0 + 1e-9).contains(&v)) {
        return Err(Error::invalid("graphon values must lie in [0, 1]"));
    }
    let mut rng = rng.rng();
    let cells: Vec<usize> = (0..n)
        .map(|_| u.partition().locate(rng.random::<f64>()))
        .collect();
    let mut g = SimpleGraph::empty(n);
    for i in 0..n {
        for j in (i + 1)..n {
            let p = u.value(cells[i], cells[j]).clamp(0.0, 1.0);
            if rng.random::<f64>() < p {
                g.add_edge(i, j).unwrap();
            }
        }
    }
    Ok(g)
}

/// How randomized rounding treats the two directions of a pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RoundingMode {
    /// Each ordered pair is rounded independently.
    Independent,
    /// Both directions of an unordered pair share one uniform draw; with a
    /// coloring whose color blocks agree across directions this preserves
    /// consistency.
    Coupled,
}

/// Randomized rounding of a fractional coloring: ordered pair (i,j) gets
/// color c with probability β_c(i,j), independently across pairs.
pub fn round_coloring(h: &FractionalColoring, rng: RngSpec) -> KColoredDigraph {
    round_coloring_with(h, RoundingMode::Independent, rng)
}

pub fn round_coloring_with(
    h: &FractionalColoring,
    mode: RoundingMode,
    rng: RngSpec,
) -> KColoredDigraph {
    let n = h.n();
    let k = h.k();
    let mut rng = rng.rng();
    let mut grid = vec![0u8; n * n];
    let pick = |i: usize, j: usize, u: f64| -> u8 {
        let mut acc = 0.0;
        for c in 1..=k {
            acc += h.weight(c, i, j).max(0.0);
            if u < acc {
                return c;
            }
        }
        k
    };
    match mode {
        RoundingMode::Independent => {
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        let u: f64 = rng.random();
                        grid[i * n + j] = pick(i, j, u);
                    }
                }
            }
        }
        RoundingMode::Coupled => {
            for i in 0..n {
                for j in (i + 1)..n {
                    let u: f64 = rng.random();
                    grid[i * n + j] = pick(i, j, u);
                    grid[j * n + i] = pick(j, i, u);
                }
            }
        }
    }
    KColoredDigraph::from_grid(n, k, grid).expect("rounded grid is a valid coloring")
}

/// Named graph families for fixtures: parsed from CLI spec strings
/// `er:n,p`, `bisect:n,p_in,p_out`, `cycle:n`, `complete:n`.
#[derive(Debug, Clone, PartialEq)]
pub enum GeneratorSpec {
    ErdosRenyi { n: usize, p: f64 },
    PlantedBisection { n: usize, p_in: f64, p_out: f64 },
    Cycle { n: usize },
    Complete { n: usize },
}

impl GeneratorSpec {
    pub fn parse(spec: &str) -> Result<Self> {
        let (family, args) = spec
            .split_once(':')
            .ok_or_else(|| Error::UnknownId(format!("generator `{spec}`")))?;
        let parts: Vec<&str> = args.split(',').collect();
        let bad = || Error::invalid(format!("malformed generator spec `{spec}`"));
        let parsed = Self::parse_family(family, &parts, bad)?;
        let n = match parsed {
            GeneratorSpec::ErdosRenyi { n, .. }
            | GeneratorSpec::PlantedBisection { n, .. }
            | GeneratorSpec::Cycle { n }
            | GeneratorSpec::Complete { n } => n,
        };
        crate::graph::check_dense_size(n as u128 * n as u128, "generated graph")?;
        Ok(parsed)
    }

    fn parse_family(
        family: &str,
        parts: &[&str],
        bad: impl Fn() -> Error,
    ) -> Result<Self> {
        match family {
            "er" => {
                if parts.len() != 2 {
                    return Err(bad());
                }
                Ok(GeneratorSpec::ErdosRenyi {
                    n: parts[0].parse().map_err(|_| bad())?,
                    p: parts[1].parse().map_err(|_| bad())?,
                })
            }
            "bisect" => {
                if parts.len() != 3 {
                    return Err(bad());
                }
                Ok(GeneratorSpec::PlantedBisection {
                    n: parts[0].parse().map_err(|_| bad())?,
                    p_in: parts[1].parse().map_err(|_| bad())?,
                    p_out: parts[2].parse().map_err(|_| bad())?,
                })
            }
            "cycle" => {
                if parts.len() != 1 {
                    return Err(bad());
                }
                Ok(GeneratorSpec::Cycle {
                    n: parts[0].parse().map_err(|_| bad())?,
                })
            }
            "complete" => {
                if parts.len() != 1 {
                    return Err(bad());
                }
                Ok(GeneratorSpec::Complete {
                    n: parts[0].parse().map_err(|_| bad())?,
                })
            }
            other => Err(Error::UnknownId(format!("generator family `{other}`"))),
        }
    }

    pub fn to_spec_string(&self) -> String {
        match self {
            GeneratorSpec::ErdosRenyi { n, p } => format!("er:{n},{p}"),
            GeneratorSpec::PlantedBisection { n, p_in, p_out } => {
                format!("bisect:{n},{p_in},{p_out}")
            }
            GeneratorSpec::Cycle { n } => format!("cycle:{n}"),
            GeneratorSpec::Complete { n } => format!("complete:{n}"),
        }
    }
}

/// Draws a graph from the named family.
pub fn generate(spec: &GeneratorSpec, rng: RngSpec) -> SimpleGraph {
    let mut rng = rng.rng();
    match *spec {
        GeneratorSpec::ErdosRenyi { n, p } => {
            let mut g = SimpleGraph::empty(n);
            for i in 0..n {
                for j in (i + 1)..n {
                    if rng.random::<f64>() < p {
                        g.add_edge(i, j).unwrap();
                    }
                }
            }
            g
        }
        GeneratorSpec::PlantedBisection { n, p_in, p_out } => {
            let half = n / 2;
            let mut g = SimpleGraph::empty(n);
            for i in 0..n {
                for j in (i + 1)..n {
                    let same = (i < half) == (j < half);
                    let p = if same { p_in } else { p_out };
                    if rng.random::<f64>() < p {
                        g.add_edge(i, j).unwrap();
                    }
                }
            }
            g
        }
        GeneratorSpec::Cycle { n } => SimpleGraph::cycle(n),
        GeneratorSpec::Complete { n } => SimpleGraph::complete(n),
    }
}

/// Uniformly random fractional coloring: each ordered pair's weight vector is
/// uniform on the probability simplex.
pub fn random_fractional(n: usize, k: u8, rng: RngSpec) -> FractionalColoring {
    let mut rng = rng.rng();
    let kk = k as usize;
    let mut beta = vec![0.0; kk * n * n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let mut cell = vec![0.0; kk];
            let mut sum = 0.0;
            for slot in cell.iter_mut() {
                let u: f64 = rng.random();
                *slot = -(1.0 - u).ln();
                sum += *slot;
            }
            if sum <= 0.0 {
                cell = vec![1.0 / kk as f64; kk];
            } else {
                for slot in cell.iter_mut() {
                    *slot /= sum;
                }
            }
            crate::kernel::renormalize_exact(&mut cell);
            for (c, &v) in cell.iter().enumerate() {
                beta[c * n * n + i * n + j] = v;
            }
        }
    }
    FractionalColoring::from_weights(n, k, beta).expect("random weights are valid")
}

/// Random k-digraphon on `steps` equal steps whose shadow graphon
/// U = Σ_{c<=m} layer_c is symmetric with entries in [u_min, u_max].
/// Layers above m split 1-U with random (possibly asymmetric) proportions.
pub fn random_digraphon(
    steps: usize,
    k: u8,
    m: u8,
    u_min: f64,
    u_max: f64,
    rng: RngSpec,
) -> Result<KDigraphon> {
    if m < 1 || m >= k {
        return Err(Error::invalid("need 1 <= m < k"));
    }
    if !(0.0..=1.0).contains(&u_min) || !(0.0..=1.0).contains(&u_max) || u_min > u_max {
        return Err(Error::invalid("need 0 <= u_min <= u_max <= 1"));
    }
    let mut rng = rng.rng();
    let s = steps;
    let mut u = vec![0.0; s * s];
    for i in 0..s {
        for j in i..s {
            let v = u_min + (u_max - u_min) * rng.random::<f64>();
            u[i * s + j] = v;
            u[j * s + i] = v;
        }
    }
    let mut layers: Vec<Vec<f64>> = vec![vec![0.0; s * s]; k as usize];
    for cell in 0..s * s {
        // split U over layers 1..=m
        let mut head = vec![0.0; m as usize];
        random_simplex(&mut head, &mut rng);
        for (c, w) in head.iter().enumerate() {
            layers[c][cell] = u[cell] * w;
        }
        // split 1-U over layers m+1..=k
        let mut tail = vec![0.0; (k - m) as usize];
        random_simplex(&mut tail, &mut rng);
        for (c, w) in tail.iter().enumerate() {
            layers[m as usize + c][cell] = (1.0 - u[cell]) * w;
        }
    }
    let kernels: Vec<StepKernel> = layers
        .into_iter()
        .map(|v| StepKernel::from_grid(v, 1.0 + 1e-9))
        .collect::<Result<_>>()?;
    KDigraphon::new(kernels)
}

fn random_simplex(out: &mut [f64], rng: &mut ChaCha8Rng) {
    if out.len() == 1 {
        out[0] = 1.0;
        return;
    }
    let mut sum = 0.0;
    for slot in out.iter_mut() {
        let u: f64 = rng.random();
        *slot = -(1.0 - u).ln();
        sum += *slot;
    }
    if sum <= 0.0 {
        let uniform = 1.0 / out.len() as f64;
        out.iter_mut().for_each(|s| *s = uniform);
    } else {
        out.iter_mut().for_each(|s| *s /= sum);
    }
}
