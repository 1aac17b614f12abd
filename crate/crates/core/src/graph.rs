//! Core combinatorial types: simple graphs, k-colored digraphs and fractional
//! colorings, with validated text-format IO.
//!
//! Node ids are 1-based in files and 0-based in memory. Colors are 1-based
//! (`1..=k`) everywhere; a color value of 0 only appears on the unused
//! diagonal of serialized digraphs.

use crate::error::{Error, Result};
use std::fmt::Write as _;
use std::path::Path;

/// Tolerance for the per-pair "weights sum to one" invariant.
pub const WEIGHT_SUM_TOL: f64 = 1e-9;

/// Cap on dense-grid cells accepted from files and CLI specs, checked
/// before any allocation or n² arithmetic.
pub const MAX_DENSE_CELLS: u128 = 1 << 27;

pub(crate) fn check_dense_size(cells: u128, what: &str) -> Result<()> {
    if cells > MAX_DENSE_CELLS {
        return Err(Error::invalid(format!(
            "{what} needs {cells} dense cells, above the {MAX_DENSE_CELLS} limit"
        )));
    }
    Ok(())
}

/// Undirected simple graph on nodes `0..n`: no loops, no multi-edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    adj: Vec<bool>, // n*n, symmetric, zero diagonal
    edge_count: usize,
}

impl SimpleGraph {
    pub fn empty(n: usize) -> Self {
        SimpleGraph {
            n,
            adj: vec![false; n * n],
            edge_count: 0,
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = SimpleGraph::empty(n);
        for i in 0..n {
            for j in (i + 1)..n {
                g.add_edge(i, j).unwrap();
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = SimpleGraph::empty(n);
        if n >= 3 {
            for i in 0..n {
                g.add_edge(i, (i + 1) % n).unwrap();
            }
        } else if n == 2 {
            g.add_edge(0, 1).unwrap();
        }
        g
    }

    /// Complete bipartite graph on parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = SimpleGraph::empty(a + b);
        for i in 0..a {
            for j in a..(a + b) {
                g.add_edge(i, j).unwrap();
            }
        }
        g
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = SimpleGraph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::invalid(format!(
                "node id out of range: ({u}, {v}) with n={}",
                self.n
            )));
        }
        if u == v {
            return Err(Error::invalid(format!("loop at node {u}")));
        }
        if self.adj[u * self.n + v] {
            return Err(Error::invalid(format!("duplicate edge {{{u}, {v}}}")));
        }
        self.adj[u * self.n + v] = true;
        self.adj[v * self.n + u] = true;
        self.edge_count += 1;
        Ok(())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.n + v]
    }

    pub fn degree(&self, u: usize) -> usize {
        (0..self.n).filter(|&v| self.has_edge(u, v)).count()
    }

    /// Edges as ordered pairs (u, v) with u < v, lexicographically sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Edge density under the kernel-mean convention: 2|E| / n².
    pub fn edge_density(&self) -> f64 {
        if self.n == 0 {
            return 0.0;
        }
        (2 * self.edge_count) as f64 / (self.n * self.n) as f64
    }

    /// Induced subgraph on `nodes` (relabeled 0.. in the given order; repeats rejected).
    pub fn induced(&self, nodes: &[usize]) -> Result<Self> {
        let mut g = SimpleGraph::empty(nodes.len());
        for (a, &u) in nodes.iter().enumerate() {
            if u >= self.n {
                return Err(Error::invalid(format!("node id {u} out of range")));
            }
            for (b, &v) in nodes.iter().enumerate().skip(a + 1) {
                if u == v {
                    return Err(Error::invalid("repeated node in induced sample"));
                }
                if self.has_edge(u, v) {
                    g.add_edge(a, b)?;
                }
            }
        }
        Ok(g)
    }

    /// Relabeling by a permutation: node `i` of the result is node `perm[i]` of `self`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::invalid("permutation length mismatch"));
        }
        self.induced(perm)
    }

    /// Block-aligned blow-up: each node becomes `t` consecutive copies forming
    /// an independent set; copies of adjacent nodes are fully joined.
    pub fn blowup(&self, t: usize) -> Self {
        let n = self.n * t;
        let mut g = SimpleGraph::empty(n);
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if self.has_edge(u, v) {
                    for a in 0..t {
                        for b in 0..t {
                            g.add_edge(u * t + a, v * t + b).unwrap();
                        }
                    }
                }
            }
        }
        g
    }

    pub fn disjoint_union(&self, other: &SimpleGraph) -> Self {
        let n = self.n + other.n;
        let mut g = SimpleGraph::empty(n);
        for (u, v) in self.edges() {
            g.add_edge(u, v).unwrap();
        }
        for (u, v) in other.edges() {
            g.add_edge(self.n + u, self.n + v).unwrap();
        }
        g
    }

    /// Parses the text format: first non-comment line `n m`, then `m` lines
    /// `u v` with 1-based node ids. Lines starting with `#` are comments.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (line_no, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "empty graph file"))?;
        let fields = split_fields(header);
        if fields.len() != 2 {
            return Err(Error::parse(line_no, "expected header `n m`"));
        }
        let n: usize = parse_field(fields[0], line_no, "node count")?;
        let m: usize = parse_field(fields[1], line_no, "edge count")?;
        check_dense_size(n as u128 * n as u128, "graph")
            .map_err(|e| Error::parse(line_no, e.to_string()))?;
        let mut g = SimpleGraph::empty(n);
        let mut seen = 0usize;
        for (line_no, line) in lines {
            let fields = split_fields(line);
            if fields.len() != 2 {
                return Err(Error::parse(line_no, "expected edge line `u v`"));
            }
            let u: usize = parse_field(fields[0], line_no, "node id")?;
            let v: usize = parse_field(fields[1], line_no, "node id")?;
            if u < 1 || u > n || v < 1 || v > n {
                return Err(Error::parse(
                    line_no,
                    format!("node id out of range 1..={n}"),
                ));
            }
            if u == v {
                return Err(Error::parse(line_no, format!("loop at node {u}")));
            }
            if g.has_edge(u - 1, v - 1) {
                return Err(Error::parse(line_no, format!("duplicate edge {u} {v}")));
            }
            g.add_edge(u - 1, v - 1)
                .map_err(|e| Error::parse(line_no, e.to_string()))?;
            seen += 1;
        }
        if seen != m {
            return Err(Error::parse(
                1,
                format!("header declares {m} edges, file has {seen}"),
            ));
        }
        Ok(g)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} {}", self.n, self.edge_count);
        for (u, v) in self.edges() {
            let _ = writeln!(s, "{} {}", u + 1, v + 1);
        }
        s
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        Ok(std::fs::write(path, self.to_text())?)
    }
}

/// Complete digraph on `0..n` with every ordered pair of distinct nodes
/// colored from `1..=k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KColoredDigraph {
    n: usize,
    k: u8,
    color: Vec<u8>, // n*n, diagonal 0
}

impl KColoredDigraph {
    /// All ordered pairs colored `color`.
    pub fn constant(n: usize, k: u8, color: u8) -> Result<Self> {
        if k < 1 || color < 1 || color > k {
            return Err(Error::invalid("color out of range"));
        }
        let mut grid = vec![color; n * n];
        for i in 0..n {
            grid[i * n + i] = 0;
        }
        Ok(KColoredDigraph { n, k, color: grid })
    }

    /// Builds from a color grid; the diagonal must be 0 and all other entries in `1..=k`.
    pub fn from_grid(n: usize, k: u8, color: Vec<u8>) -> Result<Self> {
        if k < 1 {
            return Err(Error::invalid("color count k must be >= 1"));
        }
        if color.len() != n * n {
            return Err(Error::invalid("color grid size mismatch"));
        }
        for i in 0..n {
            for j in 0..n {
                let c = color[i * n + j];
                if i == j {
                    if c != 0 {
                        return Err(Error::invalid(format!("diagonal entry ({i},{i}) must be 0")));
                    }
                } else if c < 1 || c > k {
                    return Err(Error::invalid(format!(
                        "color {c} at ({i},{j}) out of range 1..={k}"
                    )));
                }
            }
        }
        Ok(KColoredDigraph { n, k, color })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn k(&self) -> u8 {
        self.k
    }

    /// Color of the ordered pair i -> j. Panics on the diagonal.
    #[inline]
    pub fn color(&self, i: usize, j: usize) -> u8 {
        debug_assert_ne!(i, j, "diagonal is uncolored");
        self.color[i * self.n + j]
    }

    pub fn set_color(&mut self, i: usize, j: usize, c: u8) -> Result<()> {
        if i == j {
            return Err(Error::invalid("cannot color the diagonal"));
        }
        if c < 1 || c > self.k {
            return Err(Error::invalid(format!("color {c} out of range 1..={}", self.k)));
        }
        self.color[i * self.n + j] = c;
        Ok(())
    }

    /// Induced colored sub-digraph on `nodes`, relabeled in draw order.
    pub fn induced(&self, nodes: &[usize]) -> Result<Self> {
        let r = nodes.len();
        let mut grid = vec![0u8; r * r];
        for (a, &u) in nodes.iter().enumerate() {
            if u >= self.n {
                return Err(Error::invalid(format!("node id {u} out of range")));
            }
            for (b, &v) in nodes.iter().enumerate() {
                if a == b {
                    continue;
                }
                if u == v {
                    return Err(Error::invalid("repeated node in induced sample"));
                }
                grid[a * r + b] = self.color(u, v);
            }
        }
        KColoredDigraph::from_grid(r, self.k, grid)
    }

    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::invalid("permutation length mismatch"));
        }
        self.induced(perm)
    }

    /// Applies a color permutation: color c becomes `sigma[c-1]`.
    pub fn permute_colors(&self, sigma: &[u8]) -> Result<Self> {
        if sigma.len() != self.k as usize {
            return Err(Error::invalid("color permutation length mismatch"));
        }
        let mut grid = self.color.clone();
        for (idx, c) in grid.iter_mut().enumerate() {
            let i = idx / self.n;
            let j = idx % self.n;
            if i != j {
                *c = sigma[(*c - 1) as usize];
            }
        }
        KColoredDigraph::from_grid(self.n, self.k, grid)
    }

    /// Parses the text format: header `n k`, then an n×n grid of colors with
    /// 0 on the diagonal.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (line_no, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "empty digraph file"))?;
        let fields = split_fields(header);
        if fields.len() != 2 {
            return Err(Error::parse(line_no, "expected header `n k`"));
        }
        let n: usize = parse_field(fields[0], line_no, "node count")?;
        let k: u8 = parse_field(fields[1], line_no, "color count")?;
        check_dense_size(n as u128 * n as u128, "colored digraph")
            .map_err(|e| Error::parse(line_no, e.to_string()))?;
        let mut grid = Vec::with_capacity(n * n);
        let mut rows = 0usize;
        for (line_no, line) in lines {
            let fields = split_fields(line);
            if fields.len() != n {
                return Err(Error::parse(line_no, format!("expected {n} colors per row")));
            }
            for f in fields {
                grid.push(parse_field::<u8>(f, line_no, "color")?);
            }
            rows += 1;
            if rows == n {
                break;
            }
        }
        if rows != n {
            return Err(Error::parse(1, format!("expected {n} grid rows, got {rows}")));
        }
        KColoredDigraph::from_grid(n, k, grid).map_err(|e| Error::parse(1, e.to_string()))
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} {}", self.n, self.k);
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n)
                .map(|j| self.color[i * self.n + j].to_string())
                .collect();
            let _ = writeln!(s, "{}", row.join(" "));
        }
        s
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        Ok(std::fs::write(path, self.to_text())?)
    }
}

/// Shadow of a colored digraph: the simple graph keeping an edge `{i, j}`
/// whenever either direction carries a color `<= m`; orientation and coloring
/// are forgotten.
///
/// The either-direction rule is total on arbitrary inputs and coincides with
/// the both-directions reading on consistent colorings (see
/// [`is_consistent_coloring`]).
pub fn shadow(l: &KColoredDigraph, m: u8) -> Result<SimpleGraph> {
    if m < 1 || m > l.k() {
        return Err(Error::invalid(format!(
            "color threshold m={m} out of range 1..={}",
            l.k()
        )));
    }
    let n = l.n();
    let mut g = SimpleGraph::empty(n);
    for i in 0..n {
        for j in (i + 1)..n {
            if l.color(i, j) <= m || l.color(j, i) <= m {
                g.add_edge(i, j).unwrap();
            }
        }
    }
    Ok(g)
}

/// True iff for every pair both directions agree on whether their color is `<= m`.
pub fn is_consistent_coloring(l: &KColoredDigraph, m: u8) -> Result<bool> {
    if m < 1 || m > l.k() {
        return Err(Error::invalid(format!(
            "color threshold m={m} out of range 1..={}",
            l.k()
        )));
    }
    let n = l.n();
    for i in 0..n {
        for j in (i + 1)..n {
            if (l.color(i, j) <= m) != (l.color(j, i) <= m) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Fractional k-coloring: k nonnegative weights per ordered pair of distinct
/// nodes, summing to 1 within [`WEIGHT_SUM_TOL`]. Diagonal entries are unused
/// and stored as 0.
#[derive(Debug, Clone, PartialEq)]
pub struct FractionalColoring {
    n: usize,
    k: u8,
    beta: Vec<f64>, // layout [layer][i][j], layer = color - 1
}

impl FractionalColoring {
    pub fn from_weights(n: usize, k: u8, beta: Vec<f64>) -> Result<Self> {
        if k < 1 {
            return Err(Error::invalid("color count k must be >= 1"));
        }
        if beta.len() != k as usize * n * n {
            return Err(Error::invalid("weight array size mismatch"));
        }
        let h = FractionalColoring { n, k, beta };
        h.validate()?;
        Ok(h)
    }

    fn validate(&self) -> Result<()> {
        let n = self.n;
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let mut sum = 0.0;
                for layer in 0..self.k as usize {
                    let w = self.beta[layer * n * n + i * n + j];
                    if !(-1e-12..=1.0 + 1e-12).contains(&w) {
                        return Err(Error::invalid(format!(
                            "weight {w} at (color {}, {i}, {j}) outside [0, 1]",
                            layer + 1
                        )));
                    }
                    sum += w;
                }
                if (sum - 1.0).abs() > WEIGHT_SUM_TOL {
                    return Err(Error::invalid(format!(
                        "weights at ({i}, {j}) sum to {sum}, expected 1"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Indicator coloring of a colored digraph: weight 1 on each pair's color.
    pub fn indicator(l: &KColoredDigraph) -> Self {
        let n = l.n();
        let k = l.k();
        let mut beta = vec![0.0; k as usize * n * n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    let layer = (l.color(i, j) - 1) as usize;
                    beta[layer * n * n + i * n + j] = 1.0;
                }
            }
        }
        FractionalColoring { n, k, beta }
    }

    /// Same constant weight vector on every ordered pair.
    pub fn constant(n: usize, weights: &[f64]) -> Result<Self> {
        let k = weights.len() as u8;
        let mut beta = vec![0.0; weights.len() * n * n];
        for (layer, &w) in weights.iter().enumerate() {
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        beta[layer * n * n + i * n + j] = w;
                    }
                }
            }
        }
        FractionalColoring::from_weights(n, k, beta)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn k(&self) -> u8 {
        self.k
    }

    /// Weight of color `c` (1-based) on the ordered pair i -> j.
    #[inline]
    pub fn weight(&self, c: u8, i: usize, j: usize) -> f64 {
        debug_assert!(c >= 1 && c <= self.k);
        debug_assert_ne!(i, j);
        self.beta[(c - 1) as usize * self.n * self.n + i * self.n + j]
    }


    /// Parses the text format: header `n k`, then k blocks of n×n floats
    /// (row-major); diagonal entries are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (line_no, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "empty fractional coloring file"))?;
        let fields = split_fields(header);
        if fields.len() != 2 {
            return Err(Error::parse(line_no, "expected header `n k`"));
        }
        let n: usize = parse_field(fields[0], line_no, "node count")?;
        let k: u8 = parse_field(fields[1], line_no, "color count")?;
        check_dense_size(k as u128 * n as u128 * n as u128, "fractional coloring")
            .map_err(|e| Error::parse(line_no, e.to_string()))?;
        let mut beta = Vec::with_capacity(k as usize * n * n);
        let mut rows = 0usize;
        for (line_no, line) in lines {
            let fields = split_fields(line);
            if fields.len() != n {
                return Err(Error::parse(line_no, format!("expected {n} floats per row")));
            }
            for f in fields {
                beta.push(parse_field::<f64>(f, line_no, "weight")?);
            }
            rows += 1;
            if rows == k as usize * n {
                break;
            }
        }
        if rows != k as usize * n {
            return Err(Error::parse(
                1,
                format!("expected {} grid rows, got {rows}", k as usize * n),
            ));
        }
        // Zero the diagonal: it is not part of the object.
        for layer in 0..k as usize {
            for i in 0..n {
                beta[layer * n * n + i * n + i] = 0.0;
            }
        }
        FractionalColoring::from_weights(n, k, beta).map_err(|e| Error::parse(1, e.to_string()))
    }

    pub fn to_text(&self) -> String {
        let n = self.n;
        let mut s = String::new();
        let _ = writeln!(s, "{} {}", n, self.k);
        for layer in 0..self.k as usize {
            for i in 0..n {
                let row: Vec<String> = (0..n)
                    .map(|j| format_float(self.beta[layer * n * n + i * n + j]))
                    .collect();
                let _ = writeln!(s, "{}", row.join(" "));
            }
        }
        s
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        Ok(std::fs::write(path, self.to_text())?)
    }
}

/// Serializes a float with 17 significant digits so reading it back
/// reproduces the exact bit pattern.
pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

/// Yields (1-based line number, line) skipping blank and `#`-comment lines.
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

fn split_fields(line: &str) -> Vec<&str> {
    line.split_whitespace().collect()
}

fn parse_field<T: std::str::FromStr>(field: &str, line: usize, what: &str) -> Result<T> {
    field
        .parse()
        .map_err(|_| Error::parse(line, format!("cannot parse {what} from `{field}`")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_triangle() {
        let g = SimpleGraph::parse("3 3\n1 2\n2 3\n1 3\n").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g, SimpleGraph::complete(3));
    }

    #[test]
    fn parse_isolated_nodes() {
        let g = SimpleGraph::parse("2 0\n").unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn parse_rejects_loop() {
        let err = SimpleGraph::parse("2 1\n1 1\n").unwrap_err();
        match err {
            Error::Parse { line, msg } => {
                assert_eq!(line, 2);
                assert!(msg.contains("loop"), "{msg}");
            }
            other => panic!("unexpected error: {other}"),
        }
    }

    #[test]
    fn parse_rejects_duplicate_and_out_of_range() {
        assert!(SimpleGraph::parse("3 2\n1 2\n2 1\n").is_err());
        assert!(SimpleGraph::parse("3 1\n1 4\n").is_err());
        assert!(SimpleGraph::parse("3 2\n1 2\n").is_err());
    }

    #[test]
    fn parse_rejects_absurd_sizes_before_allocating() {
        assert!(SimpleGraph::parse("99999999999 0\n").is_err());
        assert!(KColoredDigraph::parse("99999999999 2\n").is_err());
        assert!(FractionalColoring::parse("99999999999 3\n").is_err());
    }

    #[test]
    fn parse_allows_comments() {
        let g = SimpleGraph::parse("# fixture\n3 1\n# the only edge\n1 3\n").unwrap();
        assert!(g.has_edge(0, 2));
    }

    #[test]
    fn graph_round_trip() {
        let g = SimpleGraph::cycle(5);
        assert_eq!(SimpleGraph::parse(&g.to_text()).unwrap(), g);
    }

    #[test]
    fn shadow_all_colors_above_threshold_is_empty() {
        let l = KColoredDigraph::constant(4, 2, 2).unwrap();
        let g = shadow(&l, 1).unwrap();
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn shadow_all_color_one_is_complete() {
        let l = KColoredDigraph::constant(4, 2, 1).unwrap();
        assert_eq!(shadow(&l, 1).unwrap(), SimpleGraph::complete(4));
        // m = k keeps everything as well
        assert_eq!(shadow(&l, 2).unwrap(), SimpleGraph::complete(4));
    }

    #[test]
    fn shadow_either_direction_rule() {
        // n=3, k=2: 0->1 colored 1, 1->0 colored 2, everything else 2
        let mut l = KColoredDigraph::constant(3, 2, 2).unwrap();
        l.set_color(0, 1, 1).unwrap();
        let g = shadow(&l, 1).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert!(g.has_edge(0, 1));
        assert!(!is_consistent_coloring(&l, 1).unwrap());
    }

    #[test]
    fn consistency_of_uniform_coloring() {
        let l = KColoredDigraph::constant(5, 3, 1).unwrap();
        for m in 1..=3 {
            assert!(is_consistent_coloring(&l, m).unwrap());
        }
    }

    #[test]
    fn shadow_rejects_bad_threshold() {
        let l = KColoredDigraph::constant(3, 2, 1).unwrap();
        assert!(shadow(&l, 0).is_err());
        assert!(shadow(&l, 3).is_err());
    }

    #[test]
    fn consistent_shadow_matches_single_direction() {
        // When consistent, an edge is in the shadow iff its forward color is <= m.
        let mut l = KColoredDigraph::constant(4, 3, 3).unwrap();
        for (i, j) in [(0usize, 1usize), (1, 2)] {
            l.set_color(i, j, 1).unwrap();
            l.set_color(j, i, 2).unwrap();
        }
        assert!(is_consistent_coloring(&l, 2).unwrap());
        let g = shadow(&l, 2).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    assert_eq!(g.has_edge(i, j), l.color(i, j) <= 2);
                }
            }
        }
    }

    #[test]
    fn digraph_round_trip() {
        let mut l = KColoredDigraph::constant(3, 3, 2).unwrap();
        l.set_color(0, 2, 3).unwrap();
        l.set_color(2, 1, 1).unwrap();
        assert_eq!(KColoredDigraph::parse(&l.to_text()).unwrap(), l);
    }

    #[test]
    fn digraph_parse_rejects_bad_grid() {
        assert!(KColoredDigraph::parse("2 2\n1 1\n1 0\n").is_err()); // nonzero diagonal
        assert!(KColoredDigraph::parse("2 2\n0 3\n1 0\n").is_err()); // color out of range
        assert!(KColoredDigraph::parse("2 2\n0 1\n").is_err()); // missing row
    }

    #[test]
    fn fractional_indicator_and_round_trip() {
        let mut l = KColoredDigraph::constant(3, 2, 2).unwrap();
        l.set_color(0, 1, 1).unwrap();
        let h = FractionalColoring::indicator(&l);
        assert_eq!(h.weight(1, 0, 1), 1.0);
        assert_eq!(h.weight(2, 0, 1), 0.0);
        assert_eq!(h.weight(2, 1, 0), 1.0);
        let parsed = FractionalColoring::parse(&h.to_text()).unwrap();
        assert_eq!(parsed, h);
    }

    #[test]
    fn fractional_rejects_bad_sum() {
        let n = 2;
        let beta = vec![0.6, 0.6, 0.6, 0.6, 0.3, 0.3, 0.3, 0.3];
        assert!(FractionalColoring::from_weights(n, 2, beta).is_err());
    }

    #[test]
    fn fractional_constant_weights() {
        let h = FractionalColoring::constant(2, &[0.3, 0.7]).unwrap();
        assert!((h.weight(1, 0, 1) - 0.3).abs() < 1e-15);
        assert!((h.weight(2, 1, 0) - 0.7).abs() < 1e-15);
    }

    #[test]
    fn blowup_of_edge_is_complete_bipartite() {
        let mut g = SimpleGraph::empty(2);
        g.add_edge(0, 1).unwrap();
        let b = g.blowup(3);
        assert_eq!(b, SimpleGraph::complete_bipartite(3, 3));
    }

    #[test]
    fn float_format_round_trips_exactly() {
        for v in [0.1, 1.0 / 3.0, 2.0_f64.sqrt(), 1e-300, 0.0, -0.25] {
            let s = format_float(v);
            let back: f64 = s.parse().unwrap();
            assert_eq!(back.to_bits(), v.to_bits(), "{s}");
        }
    }
}
