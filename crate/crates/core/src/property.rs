//! Property and parameter registries, and exhaustive certificate search.
//!
//! The registries are closed enumerations with spec-string parsers
//! (`maxcut:c=0.2` and friends); extending them means adding a variant and
//! its arms here.

use crate::dist::Distance;
use crate::error::{Error, Result};
use crate::graph::{shadow, KColoredDigraph, SimpleGraph};
use crate::tester::{self, MaxCutMode};

/// Certificate search guards.
pub const CERT_NODE_LIMIT: usize = 7;
pub const CERT_COLOR_LIMIT: u8 = 3;

/// Registry of simple-graph properties with distance procedures.
#[derive(Debug, Clone, PartialEq)]
pub enum GraphProperty {
    /// Maximum cut has at least c·n² edges.
    MaxCutDensity { c: f64 },
    /// Maximum bisection (balanced bipartition) has at least c·n² edges.
    BisectionDensity { c: f64 },
    /// Edge density 2|E|/n² lies in [lo, hi].
    EdgeDensityInterval { lo: f64, hi: f64 },
}

impl GraphProperty {
    /// Parses `maxcut:c=0.2`, `bisection:c=0.2`, `edge-density:lo=0.1,hi=0.3`.
    pub fn parse(spec: &str) -> Result<Self> {
        let (name, args) = spec
            .split_once(':')
            .ok_or_else(|| Error::UnknownId(format!("property `{spec}`")))?;
        let kv = parse_kv(args)?;
        let get = |key: &str| -> Result<f64> {
            kv.iter()
                .find(|(k, _)| k == key)
                .map(|(_, v)| *v)
                .ok_or_else(|| Error::invalid(format!("property `{spec}` needs `{key}=`")))
        };
        let p = match name {
            "maxcut" => GraphProperty::MaxCutDensity { c: get("c")? },
            "bisection" => GraphProperty::BisectionDensity { c: get("c")? },
            "edge-density" => GraphProperty::EdgeDensityInterval {
                lo: get("lo")?,
                hi: get("hi")?,
            },
            other => return Err(Error::UnknownId(format!("property family `{other}`"))),
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            GraphProperty::MaxCutDensity { c } | GraphProperty::BisectionDensity { c } => {
                if !(0.0 < c && c < 1.0) {
                    return Err(Error::invalid("cut density c must lie in (0, 1)"));
                }
            }
            GraphProperty::EdgeDensityInterval { lo, hi } => {
                if !(0.0..=1.0).contains(&lo) || !(0.0..=1.0).contains(&hi) || lo > hi {
                    return Err(Error::invalid("need 0 <= lo <= hi <= 1"));
                }
            }
        }
        Ok(())
    }

    pub fn id_string(&self) -> String {
        match *self {
            GraphProperty::MaxCutDensity { c } => format!("maxcut:c={c}"),
            GraphProperty::BisectionDensity { c } => format!("bisection:c={c}"),
            GraphProperty::EdgeDensityInterval { lo, hi } => {
                format!("edge-density:lo={lo},hi={hi}")
            }
        }
    }

    /// Number of crossing edges the property demands at size n.
    fn required_cut(&self, n: usize, c: f64) -> usize {
        let _ = self;
        let raw = c * (n * n) as f64;
        (raw - 1e-9).ceil().max(0.0) as usize
    }

    /// Membership (exact within the solver guards).
    pub fn holds(&self, g: &SimpleGraph) -> Result<bool> {
        Ok(self.edit_distance_from(g)?.value == 0.0)
    }

    /// Edit distance from `g` to the nearest member on the same node set.
    /// Exact within the enumeration guard; beyond it the value is an upper
    /// bound computed from a local-search cut and flagged inexact.
    pub fn edit_distance_from(&self, g: &SimpleGraph) -> Result<Distance> {
        let n = g.n();
        let nn = (n * n) as f64;
        match *self {
            GraphProperty::MaxCutDensity { c } => {
                let need = self.required_cut(n, c);
                let cap = (n / 2) * n.div_ceil(2);
                if need > cap {
                    return Err(Error::invalid(format!(
                        "no graph on {n} nodes has a cut of {need} edges"
                    )));
                }
                let (edits, exact) = tester::min_additions_for_cut(g, need, false)?;
                Ok(Distance {
                    value: edits as f64 / nn,
                    exact,
                })
            }
            GraphProperty::BisectionDensity { c } => {
                let need = self.required_cut(n, c);
                let cap = (n / 2) * n.div_ceil(2);
                if need > cap {
                    return Err(Error::invalid(format!(
                        "no graph on {n} nodes has a bisection of {need} edges"
                    )));
                }
                let (edits, exact) = tester::min_additions_for_cut(g, need, true)?;
                Ok(Distance {
                    value: edits as f64 / nn,
                    exact,
                })
            }
            GraphProperty::EdgeDensityInterval { lo, hi } => {
                let pairs = n * (n - 1) / 2;
                let lo_edges = ((lo * nn / 2.0) - 1e-9).ceil().max(0.0) as usize;
                let hi_edges = ((hi * nn / 2.0) + 1e-9).floor().max(0.0) as usize;
                if lo_edges > pairs {
                    return Err(Error::invalid(format!(
                        "no graph on {n} nodes has {lo_edges} edges"
                    )));
                }
                let e = g.edge_count();
                let edits = lo_edges.saturating_sub(e).max(e.saturating_sub(hi_edges));
                Ok(Distance {
                    value: edits as f64 / nn,
                    exact: true,
                })
            }
        }
    }

    /// Deterministic members of the property at size n, used as anchors for
    /// unlabeled-distance upper bounds.
    pub fn witness_members(&self, n: usize) -> Result<Vec<SimpleGraph>> {
        let mut members = Vec::new();
        match *self {
            GraphProperty::MaxCutDensity { c } | GraphProperty::BisectionDensity { c } => {
                let need = self.required_cut(n, c);
                let a = n / 2;
                let cap = a * (n - a);
                if need > cap {
                    return Err(Error::invalid("property has no members at this size"));
                }
                members.push(SimpleGraph::complete_bipartite(a, n - a));
                // sparsest member: exactly `need` crossing edges, filled in
                // lexicographic order
                let mut g = SimpleGraph::empty(n);
                let mut placed = 0usize;
                'outer: for i in 0..a {
                    for j in a..n {
                        if placed == need {
                            break 'outer;
                        }
                        g.add_edge(i, j)?;
                        placed += 1;
                    }
                }
                members.push(g);
            }
            GraphProperty::EdgeDensityInterval { lo, .. } => {
                let nn = (n * n) as f64;
                let pairs = n * (n - 1) / 2;
                let lo_edges = ((lo * nn / 2.0) - 1e-9).ceil().max(0.0) as usize;
                if lo_edges > pairs {
                    return Err(Error::invalid("property has no members at this size"));
                }
                let mut g = SimpleGraph::empty(n);
                let mut placed = 0usize;
                'fill: for i in 0..n {
                    for j in (i + 1)..n {
                        if placed == lo_edges {
                            break 'fill;
                        }
                        g.add_edge(i, j)?;
                        placed += 1;
                    }
                }
                members.push(g);
            }
        }
        Ok(members)
    }
}

/// Test properties evaluated on sampled graphs by oblivious testers.
#[derive(Debug, Clone, PartialEq)]
pub enum TestProperty {
    /// The sample is a complete graph.
    Complete,
    /// The sample has at least one edge.
    HasEdge,
    /// maxcut_density(sample) >= c - margin_scale · r^(-1/3), r the sample
    /// size. The shrinking margin keeps small samples of borderline graphs
    /// on the accepting side; `margin_scale` defaults to c.
    MaxCut { c: f64, margin_scale: Option<f64> },
}

impl TestProperty {
    pub fn parse(spec: &str) -> Result<Self> {
        if spec == "complete" {
            return Ok(TestProperty::Complete);
        }
        if spec == "has-edge" {
            return Ok(TestProperty::HasEdge);
        }
        let (name, args) = spec
            .split_once(':')
            .ok_or_else(|| Error::UnknownId(format!("test property `{spec}`")))?;
        if name != "maxcut" {
            return Err(Error::UnknownId(format!("test property family `{name}`")));
        }
        let kv = parse_kv(args)?;
        let mut c = None;
        let mut margin_scale = None;
        for (k, v) in kv {
            match k.as_str() {
                "c" => c = Some(v),
                "margin-scale" => margin_scale = Some(v),
                other => return Err(Error::invalid(format!("unknown key `{other}`"))),
            }
        }
        let c = c.ok_or_else(|| Error::invalid("maxcut test property needs `c=`"))?;
        if !(0.0 < c && c < 1.0) {
            return Err(Error::invalid("c must lie in (0, 1)"));
        }
        Ok(TestProperty::MaxCut { c, margin_scale })
    }

    pub fn id_string(&self) -> String {
        match self {
            TestProperty::Complete => "complete".into(),
            TestProperty::HasEdge => "has-edge".into(),
            TestProperty::MaxCut { c, margin_scale } => match margin_scale {
                Some(s) => format!("maxcut:c={c},margin-scale={s}"),
                None => format!("maxcut:c={c}"),
            },
        }
    }

    /// Cut-edge threshold the sample must reach, for the maxcut variant.
    pub fn cut_threshold(&self, r: usize) -> Option<usize> {
        match *self {
            TestProperty::MaxCut { c, margin_scale } => {
                let margin = margin_scale.unwrap_or(c) * (r as f64).powf(-1.0 / 3.0);
                let thr = (c - margin) * (r * r) as f64;
                Some((thr - 1e-9).ceil().max(0.0) as usize)
            }
            _ => None,
        }
    }

    pub fn evaluate(&self, sample: &SimpleGraph) -> bool {
        match *self {
            TestProperty::Complete => {
                let n = sample.n();
                sample.edge_count() == n * (n - 1) / 2
            }
            TestProperty::HasEdge => sample.edge_count() > 0,
            TestProperty::MaxCut { .. } => {
                let need = self.cut_threshold(sample.n()).unwrap();
                tester::maxcut_at_least(sample, need)
            }
        }
    }
}

/// Properties of k-colored digraphs used as certificate targets.
#[derive(Debug, Clone, PartialEq)]
pub enum ColoredProperty {
    /// Every ordered pair carries the given color.
    AllPairsColor { color: u8 },
    /// The pairs carrying color 1 in both directions form a bipartite graph
    /// with at least `min_ordered` ordered color-1 pairs among them.
    BipartiteColorOne { min_ordered: usize },
    /// Always true.
    Trivial,
}

impl ColoredProperty {
    pub fn parse(spec: &str) -> Result<Self> {
        if spec == "trivial" {
            return Ok(ColoredProperty::Trivial);
        }
        if let Some(args) = spec.strip_prefix("all-color:") {
            let color: u8 = args
                .strip_prefix("h=")
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| Error::invalid(format!("malformed `{spec}`")))?;
            return Ok(ColoredProperty::AllPairsColor { color });
        }
        if let Some(args) = spec.strip_prefix("bipartite-one:") {
            let min_ordered: usize = args
                .strip_prefix("t=")
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| Error::invalid(format!("malformed `{spec}`")))?;
            return Ok(ColoredProperty::BipartiteColorOne { min_ordered });
        }
        Err(Error::UnknownId(format!("colored property `{spec}`")))
    }

    pub fn id_string(&self) -> String {
        match *self {
            ColoredProperty::AllPairsColor { color } => format!("all-color:h={color}"),
            ColoredProperty::BipartiteColorOne { min_ordered } => {
                format!("bipartite-one:t={min_ordered}")
            }
            ColoredProperty::Trivial => "trivial".into(),
        }
    }

    pub fn holds(&self, l: &KColoredDigraph) -> bool {
        match *self {
            ColoredProperty::Trivial => true,
            ColoredProperty::AllPairsColor { color } => {
                let n = l.n();
                (0..n).all(|i| (0..n).all(|j| i == j || l.color(i, j) == color))
            }
            ColoredProperty::BipartiteColorOne { min_ordered } => {
                let pairs = double_one_pairs(l);
                2 * pairs.len() >= min_ordered && is_bipartite_pairs(l.n(), &pairs)
            }
        }
    }
}

/// Unordered pairs whose both directions carry color 1.
pub fn double_one_pairs(l: &KColoredDigraph) -> Vec<(usize, usize)> {
    let n = l.n();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if l.color(i, j) == 1 && l.color(j, i) == 1 {
                pairs.push((i, j));
            }
        }
    }
    pairs
}

/// BFS 2-coloring over the pair set.
pub fn is_bipartite_pairs(n: usize, pairs: &[(usize, usize)]) -> bool {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in pairs {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut side = vec![-1i8; n];
    for start in 0..n {
        if side[start] != -1 || adj[start].is_empty() {
            continue;
        }
        side[start] = 0;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if side[v] == -1 {
                    side[v] = 1 - side[u];
                    queue.push_back(v);
                } else if side[v] == side[u] {
                    return false;
                }
            }
        }
    }
    true
}

/// Graph parameters for sample-based estimation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphParameter {
    /// 2|E| / n²
    EdgeDensity,
    /// maxcut / n²
    NormalizedMaxcut,
}

impl GraphParameter {
    pub fn parse(spec: &str) -> Result<Self> {
        match spec {
            "edge-density" => Ok(GraphParameter::EdgeDensity),
            "maxcut" => Ok(GraphParameter::NormalizedMaxcut),
            other => Err(Error::UnknownId(format!("parameter `{other}`"))),
        }
    }

    pub fn id_string(&self) -> &'static str {
        match self {
            GraphParameter::EdgeDensity => "edge-density",
            GraphParameter::NormalizedMaxcut => "maxcut",
        }
    }

    /// Evaluates the parameter; the flag reports whether the value is exact.
    pub fn evaluate(&self, g: &SimpleGraph) -> Result<(f64, bool)> {
        match self {
            GraphParameter::EdgeDensity => Ok((g.edge_density(), true)),
            GraphParameter::NormalizedMaxcut => {
                let mc = tester::maxcut(g, MaxCutMode::Auto)?;
                Ok((mc.density, mc.exact))
            }
        }
    }
}

/// Parameters of k-colored digraphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColoredParameter {
    /// 2·|double-color-1 pairs| / n² when those pairs form a bipartite
    /// graph, else 0: the edge-coded "endpoints differently colored" count.
    TwoColoredEdges,
}

impl ColoredParameter {
    pub fn parse(spec: &str) -> Result<Self> {
        match spec {
            "two-colored" => Ok(ColoredParameter::TwoColoredEdges),
            other => Err(Error::UnknownId(format!("colored parameter `{other}`"))),
        }
    }

    pub fn id_string(&self) -> &'static str {
        match self {
            ColoredParameter::TwoColoredEdges => "two-colored",
        }
    }

    pub fn evaluate(&self, l: &KColoredDigraph) -> f64 {
        match self {
            ColoredParameter::TwoColoredEdges => {
                let pairs = double_one_pairs(l);
                if is_bipartite_pairs(l.n(), &pairs) {
                    (2 * pairs.len()) as f64 / (l.n() * l.n()) as f64
                } else {
                    0.0
                }
            }
        }
    }
}

/// Per-unordered-pair color combinations compatible with a target shadow.
pub(crate) struct ShadowEnum {
    /// (i, j) with i < j, lexicographically sorted.
    pub pairs: Vec<(usize, usize)>,
    /// Allowed (color(i->j), color(j->i)) per pair, lexicographically sorted.
    pub combos: Vec<Vec<(u8, u8)>>,
}

impl ShadowEnum {
    pub fn new(g: &SimpleGraph, k: u8, m: u8) -> Result<Self> {
        if m < 1 || m > k {
            return Err(Error::invalid(format!("need 1 <= m <= k, got m={m}, k={k}")));
        }
        let n = g.n();
        let mut pairs = Vec::new();
        let mut combos = Vec::new();
        let mut edge_combos = Vec::new();
        let mut non_edge_combos = Vec::new();
        for a in 1..=k {
            for b in 1..=k {
                if a <= m || b <= m {
                    edge_combos.push((a, b));
                } else {
                    non_edge_combos.push((a, b));
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                pairs.push((i, j));
                combos.push(if g.has_edge(i, j) {
                    edge_combos.clone()
                } else {
                    non_edge_combos.clone()
                });
            }
        }
        Ok(ShadowEnum { pairs, combos })
    }
}

/// Exhaustive certificate search: the lexicographically first k-colored
/// digraph L with shadow(L, m) = G and L ∈ Q, or None. Enumeration is per
/// unordered pair (both directions assigned together), pruning branches the
/// shadow constraint or the property can no longer satisfy.
pub fn brute_force_certificate(
    g: &SimpleGraph,
    q: &ColoredProperty,
    k: u8,
    m: u8,
) -> Result<Option<KColoredDigraph>> {
    if g.n() > CERT_NODE_LIMIT {
        return Err(Error::size_guard(format!(
            "certificate search is limited to {CERT_NODE_LIMIT} nodes, got {}",
            g.n()
        )));
    }
    if k > CERT_COLOR_LIMIT {
        return Err(Error::size_guard(format!(
            "certificate search is limited to {CERT_COLOR_LIMIT} colors, got {k}"
        )));
    }
    let plan = ShadowEnum::new(g, k, m)?;
    if plan.combos.iter().any(|c| c.is_empty()) {
        return Ok(None);
    }
    let n = g.n();
    let mut grid = vec![0u8; n * n];
    let mut search = CertSearch {
        g,
        q,
        plan: &plan,
        n,
        k,
        double_one: Vec::new(),
    };
    if search.dfs(0, &mut grid) {
        let l = KColoredDigraph::from_grid(n, k, grid)?;
        debug_assert_eq!(shadow(&l, m)?, *g);
        debug_assert!(q.holds(&l));
        return Ok(Some(l));
    }
    Ok(None)
}

struct CertSearch<'a> {
    g: &'a SimpleGraph,
    q: &'a ColoredProperty,
    plan: &'a ShadowEnum,
    n: usize,
    k: u8,
    double_one: Vec<(usize, usize)>,
}

impl CertSearch<'_> {
    fn dfs(&mut self, depth: usize, grid: &mut [u8]) -> bool {
        if depth == self.plan.pairs.len() {
            let l = KColoredDigraph::from_grid(self.n, self.k, grid.to_vec()).unwrap();
            return self.q.holds(&l);
        }
        let (i, j) = self.plan.pairs[depth];
        for idx in 0..self.plan.combos[depth].len() {
            let (a, b) = self.plan.combos[depth][idx];
            grid[i * self.n + j] = a;
            grid[j * self.n + i] = b;
            let is_double_one = a == 1 && b == 1;
            if is_double_one {
                self.double_one.push((i, j));
            }
            if self.feasible(depth + 1, a, b) && self.dfs(depth + 1, grid) {
                return true;
            }
            if is_double_one {
                self.double_one.pop();
            }
        }
        grid[i * self.n + j] = 0;
        grid[j * self.n + i] = 0;
        false
    }

    /// Property-specific pruning: `a`, `b` are the directions just assigned.
    fn feasible(&self, next_depth: usize, a: u8, b: u8) -> bool {
        match *self.q {
            ColoredProperty::Trivial => true,
            ColoredProperty::AllPairsColor { color } => a == color && b == color,
            ColoredProperty::BipartiteColorOne { min_ordered } => {
                // remaining shadow edges are the only candidates for more
                // double-1 pairs
                let remaining_edges = self.plan.pairs[next_depth..]
                    .iter()
                    .filter(|&&(i, j)| self.g.has_edge(i, j))
                    .count();
                if 2 * (self.double_one.len() + remaining_edges) < min_ordered {
                    return false;
                }
                is_bipartite_pairs(self.n, &self.double_one)
            }
        }
    }
}

fn parse_kv(args: &str) -> Result<Vec<(String, f64)>> {
    args.split(',')
        .map(|part| {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::invalid(format!("expected key=value, got `{part}`")))?;
            let v: f64 = v
                .parse()
                .map_err(|_| Error::invalid(format!("cannot parse value in `{part}`")))?;
            Ok((k.to_string(), v))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::shadow;

    #[test]
    fn property_parsing_round_trip() {
        for spec in ["maxcut:c=0.2", "bisection:c=0.16", "edge-density:lo=0.1,hi=0.3"] {
            let p = GraphProperty::parse(spec).unwrap();
            assert_eq!(GraphProperty::parse(&p.id_string()).unwrap(), p);
        }
        assert!(GraphProperty::parse("maxcut:c=1.5").is_err());
        assert!(GraphProperty::parse("girth:g=5").is_err());
    }

    #[test]
    fn certificate_all_color_one_on_triangle() {
        // K3 with Q = "all pairs color 1" has the all-1 digraph as its
        // unique certificate.
        let g = SimpleGraph::complete(3);
        let q = ColoredProperty::AllPairsColor { color: 1 };
        let cert = brute_force_certificate(&g, &q, 2, 1).unwrap().unwrap();
        assert_eq!(cert, KColoredDigraph::constant(3, 2, 1).unwrap());
    }

    #[test]
    fn certificate_all_color_one_on_empty_graph_fails() {
        // The shadow of the all-1 digraph is complete, so the empty graph has
        // no certificate for this Q.
        let g = SimpleGraph::empty(3);
        let q = ColoredProperty::AllPairsColor { color: 1 };
        assert!(brute_force_certificate(&g, &q, 2, 1).unwrap().is_none());
    }

    #[test]
    fn certificate_bipartite_one_on_c5() {
        // C5 has max cut 4, so 8 ordered double-1 pairs are achievable.
        let g = SimpleGraph::cycle(5);
        let q = ColoredProperty::BipartiteColorOne { min_ordered: 8 };
        let cert = brute_force_certificate(&g, &q, 2, 1).unwrap().unwrap();
        assert_eq!(shadow(&cert, 1).unwrap(), g);
        assert!(q.holds(&cert));
        // 10 ordered pairs would need a bipartite C5, which does not exist
        let q10 = ColoredProperty::BipartiteColorOne { min_ordered: 10 };
        assert!(brute_force_certificate(&g, &q10, 2, 1).unwrap().is_none());
    }

    #[test]
    fn certificate_search_guards() {
        let g = SimpleGraph::complete(8);
        let q = ColoredProperty::Trivial;
        assert!(brute_force_certificate(&g, &q, 2, 1).is_err());
        let g = SimpleGraph::complete(3);
        assert!(brute_force_certificate(&g, &q, 4, 1).is_err());
    }

    #[test]
    fn certificate_shadow_is_lex_first() {
        // With the trivial property the first certificate in pair-combo
        // order is returned; all three edge combos start with (1, 1).
        let g = SimpleGraph::complete(3);
        let cert = brute_force_certificate(&g, &ColoredProperty::Trivial, 2, 1)
            .unwrap()
            .unwrap();
        assert_eq!(cert, KColoredDigraph::constant(3, 2, 1).unwrap());
    }

    #[test]
    fn bipartite_pair_check() {
        assert!(is_bipartite_pairs(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]));
        assert!(!is_bipartite_pairs(3, &[(0, 1), (1, 2), (2, 0)]));
        assert!(is_bipartite_pairs(5, &[]));
    }

    #[test]
    fn maxcut_property_distances() {
        // empty graph on 10 nodes vs maxcut:c=0.2 needs 20 crossing edges
        let empty = SimpleGraph::empty(10);
        let p = GraphProperty::MaxCutDensity { c: 0.2 };
        let d = p.edit_distance_from(&empty).unwrap();
        assert!((d.value - 0.2).abs() < 1e-15);
        assert!(d.exact);
        // C5 with maxcut 4 = 0.16·25 is already a member
        let c5 = SimpleGraph::cycle(5);
        let p = GraphProperty::MaxCutDensity { c: 0.16 };
        let d = p.edit_distance_from(&c5).unwrap();
        assert_eq!(d.value, 0.0);
        assert!(p.holds(&c5).unwrap());
    }

    #[test]
    fn members_satisfy_their_property() {
        let p = GraphProperty::MaxCutDensity { c: 0.2 };
        for member in p.witness_members(10).unwrap() {
            assert!(p.holds(&member).unwrap(), "{:?}", member.edges());
        }
        let p = GraphProperty::EdgeDensityInterval { lo: 0.2, hi: 0.5 };
        for member in p.witness_members(8).unwrap() {
            assert!(p.holds(&member).unwrap());
        }
    }

    #[test]
    fn edge_density_interval_distance() {
        let p = GraphProperty::EdgeDensityInterval { lo: 0.25, hi: 0.5 };
        // n=4: lo needs ceil(0.25·16/2) = 2 edges
        let empty = SimpleGraph::empty(4);
        let d = p.edit_distance_from(&empty).unwrap();
        assert!((d.value - 2.0 / 16.0).abs() < 1e-15);
        let k4 = SimpleGraph::complete(4);
        // 6 edges vs hi = floor(0.5·16/2) = 4
        let d = p.edit_distance_from(&k4).unwrap();
        assert!((d.value - 2.0 / 16.0).abs() < 1e-15);
    }

    #[test]
    fn test_property_parsing() {
        assert_eq!(TestProperty::parse("complete").unwrap(), TestProperty::Complete);
        assert_eq!(TestProperty::parse("has-edge").unwrap(), TestProperty::HasEdge);
        match TestProperty::parse("maxcut:c=0.2").unwrap() {
            TestProperty::MaxCut { c, margin_scale } => {
                assert_eq!(c, 0.2);
                assert!(margin_scale.is_none());
            }
            other => panic!("{other:?}"),
        }
        assert!(TestProperty::parse("maxcut:c=2").is_err());
    }

    #[test]
    fn two_colored_parameter_values() {
        // double-1 pairs forming a path are bipartite
        let mut l = KColoredDigraph::constant(4, 2, 2).unwrap();
        for (i, j) in [(0usize, 1usize), (1, 2)] {
            l.set_color(i, j, 1).unwrap();
            l.set_color(j, i, 1).unwrap();
        }
        let g = ColoredParameter::TwoColoredEdges;
        assert!((g.evaluate(&l) - 4.0 / 16.0).abs() < 1e-15);
        // an odd cycle of double-1 pairs scores zero
        let mut l = KColoredDigraph::constant(3, 2, 2).unwrap();
        for (i, j) in [(0usize, 1usize), (1, 2), (0, 2)] {
            l.set_color(i, j, 1).unwrap();
            l.set_color(j, i, 1).unwrap();
        }
        assert_eq!(g.evaluate(&l), 0.0);
    }
}
