//! Acceptance suite: one test per release criterion, each printing a
//! PASS line with the measured numbers. Run with
//! `cargo test -p graphonlab --test acceptance -- --nocapture` to see them.

use graphonlab::dist::{
    cut_distance_digraphons, cut_distance_digraphons_with, cut_distance_fractional,
    cut_distance_graphs_labeled, cut_norm, cut_norm_reference, CutNormMode,
};
use graphonlab::experiment::{heuristic_opts, ExperimentConfig, DigraphonSource};
use graphonlab::graph::{shadow, FractionalColoring, KColoredDigraph, SimpleGraph};
use graphonlab::kernel::{
    average, digraphon_of_digraph, digraphon_of_fractional, digraphon_of_fractional_with,
    pullback_coloring, AnalyticKernel, DiagonalRule, Partition, StepKernel,
};
use graphonlab::property::{ColoredProperty, GraphProperty};
use graphonlab::sample::{
    random_digraphon, random_fractional, round_coloring, sample_graph_from_graphon, RngSpec,
};
use graphonlab::tester::{
    acceptance_probability, certified_parameter, maxcut, nd_membership, tester_for_maxcut,
    CertifiedMode, MaxCutMode,
};
use rand::Rng;

fn seeded(master: u64, stream: u64) -> RngSpec {
    RngSpec::new(master, stream)
}

fn random_graph(n: usize, p: f64, rng: &mut impl Rng) -> SimpleGraph {
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

/// Rounded colorings stay within the 10k/√n cut-distance envelope of their
/// fractional source: k=3, n in {100, 400}, 100 trials each, zero violations.
#[test]
fn rounding_concentration_bound() {
    let k = 3u8;
    let trials = 100u64;
    for (ni, &n) in [100usize, 400].iter().enumerate() {
        let bound = 10.0 * k as f64 / (n as f64).sqrt();
        let mut violations = 0;
        let mut worst = 0.0f64;
        for t in 0..trials {
            let base = (ni as u64 * trials + t) * 2;
            let h = random_fractional(n, k, seeded(0xACCE97, base));
            let l = round_coloring(&h, seeded(0xACCE97, base + 1));
            let d = graphonlab::dist::cut_distance_fractional_with(
                &h,
                &FractionalColoring::indicator(&l),
                CutNormMode::Auto,
                &heuristic_opts(n),
            )
            .unwrap();
            worst = worst.max(d.value);
            if d.value > bound {
                violations += 1;
            }
        }
        assert_eq!(violations, 0, "n={n}: {violations} violations");
        println!(
            "[PASS] rounding concentration: n={n}, k={k}, 100/100 trials within {bound:.3} (worst {worst:.3})"
        );
    }
}

/// The greedy-second-side exact solver agrees with full 2^m x 2^m
/// enumeration on 200 random step kernels (m <= 10) to 1e-12.
#[test]
fn cut_norm_solver_matches_reference() {
    let mut worst = 0.0f64;
    for t in 0..200u64 {
        let m = 2 + (t % 9) as usize; // 2..=10
        let mut rng = seeded(0x0C_0DE, t).rng();
        let values: Vec<f64> = (0..m * m).map(|_| rng.random::<f64>() * 2.0 - 1.0).collect();
        let w = StepKernel::from_grid(values, 1.0).unwrap();
        let fast = cut_norm(&w, CutNormMode::Exact).unwrap().value;
        let slow = cut_norm_reference(&w).unwrap();
        let gap = (fast - slow).abs();
        worst = worst.max(gap);
        assert!(gap < 1e-12, "kernel {t} (m={m}): {fast} vs {slow}");
    }
    println!("[PASS] cut-norm oracle equivalence: 200 kernels, worst gap {worst:.2e}");
}

/// Independent graph-side evaluation of the labeled cut distance via
/// integer subset sums.
fn graph_cut_distance_by_enumeration(g: &SimpleGraph, h: &SimpleGraph) -> f64 {
    let n = g.n();
    let mut d = vec![0i64; n * n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                d[i * n + j] =
                    (g.has_edge(i, j) as i64) - (h.has_edge(i, j) as i64);
            }
        }
    }
    let mut best = 0i64;
    for s_mask in 0u32..(1 << n) {
        let mut pos = 0i64;
        let mut neg = 0i64;
        for j in 0..n {
            let mut col = 0i64;
            for i in 0..n {
                if s_mask >> i & 1 == 1 {
                    col += d[i * n + j];
                }
            }
            if col > 0 {
                pos += col;
            } else {
                neg += col;
            }
        }
        best = best.max(pos).max(-neg);
    }
    best as f64 / (n * n) as f64
}

/// d_□(G, G') equals ‖W_G - W_G'‖_□ and the fractional distance equals the
/// digraphon distance, on 100 random instances each, to 1e-12.
#[test]
fn definitional_consistency() {
    let mut worst_graph = 0.0f64;
    for t in 0..100u64 {
        let n = 3 + (t % 8) as usize; // 3..=10
        let mut rng = seeded(0xDEF1, t).rng();
        let g = random_graph(n, 0.5, &mut rng);
        let h = random_graph(n, 0.5, &mut rng);
        let via_kernel = cut_distance_graphs_labeled(&g, &h, CutNormMode::Exact)
            .unwrap()
            .value;
        let via_counts = graph_cut_distance_by_enumeration(&g, &h);
        let gap = (via_kernel - via_counts).abs();
        worst_graph = worst_graph.max(gap);
        assert!(gap < 1e-12, "instance {t}: {via_kernel} vs {via_counts}");
    }
    let mut worst_frac = 0.0f64;
    for t in 0..100u64 {
        let n = 3 + (t % 8) as usize;
        let h = random_fractional(n, 3, seeded(0xDEF2, t));
        let h2 = random_fractional(n, 3, seeded(0xDEF3, t));
        let df = cut_distance_fractional(&h, &h2, CutNormMode::Exact)
            .unwrap()
            .value;
        let dd = cut_distance_digraphons(
            &digraphon_of_fractional(&h),
            &digraphon_of_fractional(&h2),
            CutNormMode::Exact,
        )
        .unwrap()
        .value;
        let gap = (df - dd).abs();
        worst_frac = worst_frac.max(gap);
        assert!(gap < 1e-12, "instance {t}: {df} vs {dd}");
    }
    println!(
        "[PASS] definitional consistency: graph gap {worst_graph:.2e}, fractional gap {worst_frac:.2e}"
    );
}

/// Pullback pipeline: rounded pullback colorings reproduce the sampled
/// shadow in every trial, and the digraphon distance medians strictly
/// decrease along the size grid.
#[test]
fn pullback_pipeline() {
    let seed = 0x9A11;
    let w = random_digraphon(4, 3, 1, 0.2, 0.8, seeded(seed, 0)).unwrap();
    let u = w.head_sum(1);
    let sizes = [16usize, 32, 64, 128];
    let trials = 50u64;
    let mut medians = Vec::new();
    for (ni, &n) in sizes.iter().enumerate() {
        let mut dists = Vec::new();
        let mut shadow_failures = 0;
        for t in 0..trials {
            let base = 16 + (ni as u64 * trials + t) * 2;
            let f = sample_graph_from_graphon(&u, n, seeded(seed, base)).unwrap();
            let pb = pullback_coloring(&f, &w, 1).unwrap();
            let wh = digraphon_of_fractional(&pb.coloring);
            let d = cut_distance_digraphons_with(
                &wh,
                &w,
                CutNormMode::Auto,
                &heuristic_opts(n.max(4)),
            )
            .unwrap();
            dists.push(d.value);
            let j = round_coloring(&pb.coloring, seeded(seed, base + 1));
            if shadow(&j, 1).unwrap() != f {
                shadow_failures += 1;
            }
        }
        assert_eq!(shadow_failures, 0, "n={n}");
        dists.sort_by(|a, b| a.partial_cmp(b).unwrap());
        medians.push(0.5 * (dists[24] + dists[25]));
    }
    for w in medians.windows(2) {
        assert!(w[1] < w[0], "medians not strictly decreasing: {medians:?}");
    }
    println!(
        "[PASS] pullback pipeline: shadows 150/150 exact at n in {{16,32,64}}, medians {:?} strictly decreasing",
        medians
    );
}

/// Aligned blow-ups of a consistently colored digraph pull back to the
/// reference digraphon exactly: distance 0.0 at every compatible size.
#[test]
fn blowup_exactness() {
    let mut l = KColoredDigraph::constant(3, 2, 2).unwrap();
    l.set_color(0, 1, 1).unwrap();
    l.set_color(1, 0, 1).unwrap();
    l.set_color(1, 2, 1).unwrap();
    l.set_color(2, 1, 1).unwrap();
    let m = 1u8;
    let w = digraphon_of_digraph(&l, DiagonalRule::ShadowSplit { m });
    let base = shadow(&l, m).unwrap();
    for t in [1usize, 2, 4, 8] {
        let f = base.blowup(t);
        let pb = pullback_coloring(&f, &w, m).unwrap();
        let wh = digraphon_of_fractional_with(&pb.coloring, DiagonalRule::ShadowSplit { m });
        let d = cut_distance_digraphons(&wh, &w, CutNormMode::Auto).unwrap();
        assert_eq!(d.value, 0.0, "blow-up factor {t}");
    }
    println!("[PASS] blow-up exactness: distance identically 0.0 at n in {{3,6,12,24}}");
}

/// Independent closed-form evaluation of the stepping error for the product
/// kernel: both the fine and coarse cell means are midpoint products.
fn product_stepping_error_oracle(resolution: usize, n: usize) -> f64 {
    let r = resolution as f64;
    let mut total = 0.0;
    for a in 0..resolution {
        for b in 0..resolution {
            let fine = ((2 * a + 1) as f64 / (2.0 * r)) * ((2 * b + 1) as f64 / (2.0 * r));
            // containing coarse cell of the equal partition S_n
            let ca = (a * n) / resolution;
            let cb = (b * n) / resolution;
            let nf = n as f64;
            let coarse = ((2 * ca + 1) as f64 / (2.0 * nf)) * ((2 * cb + 1) as f64 / (2.0 * nf));
            total += (fine - coarse).abs();
        }
    }
    total / (r * r)
}

/// Averaging the product kernel over S_n: L1 errors strictly decrease over
/// dyadic n and end below 0.02 at n = 128, matching the closed form.
#[test]
fn stepping_operator_convergence() {
    let resolution = 256;
    let w = AnalyticKernel::Product.discretize(resolution);
    let sizes = [2usize, 4, 8, 16, 32, 64, 128];
    let mut errors = Vec::new();
    for &n in &sizes {
        let avg = average(&w, &Partition::equal(n)).unwrap();
        let err = avg.sub(&w).l1_norm();
        let oracle = product_stepping_error_oracle(resolution, n);
        assert!(
            (err - oracle).abs() < 1e-12,
            "n={n}: {err} vs closed form {oracle}"
        );
        errors.push(err);
    }
    for pair in errors.windows(2) {
        assert!(pair[1] < pair[0], "errors not strictly decreasing: {errors:?}");
    }
    let last = *errors.last().unwrap();
    assert!(last <= 0.02, "final error {last}");
    println!(
        "[PASS] stepping operator: errors strictly decreasing, {:.4} at n=128 (<= 0.02)",
        last
    );
}

/// The c = 0.2 max-cut tester separates K_{50,50} from the empty graph at
/// the 2/3 / 1/3 thresholds for every r in {12, 16, 20}.
#[test]
fn tester_separation() {
    let in_property = SimpleGraph::complete_bipartite(50, 50);
    let far = SimpleGraph::empty(100);
    for (ri, r) in [12usize, 16, 20].into_iter().enumerate() {
        let spec = tester_for_maxcut(0.2).unwrap().with_r(r).with_trials(2000);
        let accept = acceptance_probability(&in_property, &spec, seeded(0x7E57, (ri as u64) * 4096))
            .unwrap()
            .acceptance;
        let reject = acceptance_probability(&far, &spec, seeded(0x7E58, (ri as u64) * 4096))
            .unwrap()
            .acceptance;
        assert!(accept >= 2.0 / 3.0, "r={r}: acceptance {accept}");
        assert!(reject <= 1.0 / 3.0, "r={r}: far acceptance {reject}");
        println!(
            "[PASS] tester separation r={r}: K(50,50) accepted at {accept:.3}, empty graph at {reject:.3}"
        );
    }
}

/// Certificate search agrees with the direct max-cut characterization on
/// every labeled graph with up to 5 nodes: a bipartite double-1 certificate
/// with t ordered pairs exists iff 2·maxcut >= t; where the matching
/// registry property is well-formed, its edit distance vanishes on exactly
/// the same set.
#[test]
fn certificate_oracle_agreement() {
    let mut graphs_checked = 0usize;
    for n in 1usize..=5 {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
            .collect();
        for mask in 0u32..(1 << pairs.len()) {
            let mut g = SimpleGraph::empty(n);
            for (b, &(i, j)) in pairs.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    g.add_edge(i, j).unwrap();
                }
            }
            let mc = maxcut(&g, MaxCutMode::Exact).unwrap().cut_edges;
            for t in [2usize, 4, 6, 8] {
                let q = ColoredProperty::BipartiteColorOne { min_ordered: t };
                let nd = nd_membership(&g, &q, 2, 1).unwrap();
                let direct = 2 * mc >= t;
                assert_eq!(nd, direct, "n={n} mask={mask} t={t}");
                let c = t as f64 / (2 * n * n) as f64;
                if c < 1.0 {
                    let p = GraphProperty::MaxCutDensity { c };
                    if p.witness_members(n).is_ok() {
                        let d = p.edit_distance_from(&g).unwrap();
                        assert_eq!(d.value == 0.0, nd, "n={n} mask={mask} t={t}");
                    }
                }
            }
            graphs_checked += 1;
        }
    }
    println!(
        "[PASS] certificate oracle agreement: {graphs_checked} labeled graphs (n <= 5), thresholds t in {{2,4,6,8}}"
    );
}

/// The certified two-colored parameter of C5 is the normalized max cut in
/// the ordered-pair convention: 0.32 = 2 · maxcut_density.
#[test]
fn certified_parameter_matches_maxcut_on_c5() {
    let c5 = SimpleGraph::cycle(5);
    let v = certified_parameter(
        &c5,
        graphonlab::property::ColoredParameter::TwoColoredEdges,
        2,
        1,
        CertifiedMode::Exact,
        seeded(0, 0),
    )
    .unwrap();
    let mc = maxcut(&c5, MaxCutMode::Exact).unwrap();
    assert!((v.value - 0.32).abs() < 1e-12);
    assert!((v.value - 2.0 * mc.density).abs() < 1e-12);
    println!(
        "[PASS] certified parameter on C5: {} = 2 x {} (max-cut density)",
        v.value, mc.density
    );
}

/// Symmetry and the triangle inequality for the cut distances and edit
/// distances, 100 random triples per distance, tolerance 1e-12.
#[test]
fn metric_axioms() {
    let tol = 1e-12;
    // labeled cut distance + edit distance on graphs
    for t in 0..100u64 {
        let n = 3 + (t % 8) as usize;
        let mut rng = seeded(0x3E7A1C, t).rng();
        let a = random_graph(n, 0.5, &mut rng);
        let b = random_graph(n, 0.5, &mut rng);
        let c = random_graph(n, 0.5, &mut rng);
        let d = |x: &SimpleGraph, y: &SimpleGraph| {
            cut_distance_graphs_labeled(x, y, CutNormMode::Exact)
                .unwrap()
                .value
        };
        assert!((d(&a, &b) - d(&b, &a)).abs() < tol);
        assert!(d(&a, &c) <= d(&a, &b) + d(&b, &c) + tol);
        assert!(d(&a, &a) < tol);
        let e = |x: &SimpleGraph, y: &SimpleGraph| {
            graphonlab::dist::edit_distance_graphs(x, y).unwrap()
        };
        assert!((e(&a, &b) - e(&b, &a)).abs() < tol);
        assert!(e(&a, &c) <= e(&a, &b) + e(&b, &c) + tol);
    }
    // fractional / digraphon cut distances + colored and digraphon edit
    for t in 0..100u64 {
        let n = 3 + (t % 6) as usize;
        let mk = |s: u64| random_fractional(n, 3, seeded(s, t));
        let (ha, hb, hc) = (mk(21), mk(22), mk(23));
        let d = |x: &FractionalColoring, y: &FractionalColoring| {
            cut_distance_fractional(x, y, CutNormMode::Exact).unwrap().value
        };
        assert!((d(&ha, &hb) - d(&hb, &ha)).abs() < tol);
        assert!(d(&ha, &hc) <= d(&ha, &hb) + d(&hb, &hc) + tol);
        let (wa, wb, wc) = (
            digraphon_of_fractional(&ha),
            digraphon_of_fractional(&hb),
            digraphon_of_fractional(&hc),
        );
        let dd = |x: &graphonlab::KDigraphon, y: &graphonlab::KDigraphon| {
            cut_distance_digraphons(x, y, CutNormMode::Exact).unwrap().value
        };
        assert!((dd(&wa, &wb) - dd(&wb, &wa)).abs() < tol);
        assert!(dd(&wa, &wc) <= dd(&wa, &wb) + dd(&wb, &wc) + tol);
        let de = |x: &graphonlab::KDigraphon, y: &graphonlab::KDigraphon| {
            graphonlab::dist::edit_distance_digraphons(x, y).unwrap()
        };
        assert!((de(&wa, &wb) - de(&wb, &wa)).abs() < tol);
        assert!(de(&wa, &wc) <= de(&wa, &wb) + de(&wb, &wc) + tol);
        let la = round_coloring(&ha, seeded(31, t));
        let lb = round_coloring(&hb, seeded(32, t));
        let lc = round_coloring(&hc, seeded(33, t));
        let dc = |x: &KColoredDigraph, y: &KColoredDigraph| {
            graphonlab::dist::edit_distance_colored(x, y).unwrap()
        };
        assert!((dc(&la, &lb) - dc(&lb, &la)).abs() < tol);
        assert!(dc(&la, &lc) <= dc(&la, &lb) + dc(&lb, &lc) + tol);
    }
    println!("[PASS] metric axioms: symmetry and triangle inequality on 100 random triples per distance");
}

/// The experiment runner reproduces the pullback criterion end to end with
/// its verdicts (exercising the config-driven pipeline on a blow-up source
/// where distances vanish identically).
#[test]
fn experiment_runner_blowup_verdicts() {
    let dir = std::env::temp_dir().join("graphonlab-acceptance");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("source.d");
    let mut l = KColoredDigraph::constant(3, 2, 2).unwrap();
    l.set_color(0, 1, 1).unwrap();
    l.set_color(1, 0, 1).unwrap();
    l.save(&path).unwrap();
    let cfg = ExperimentConfig::PullbackConvergence {
        sizes: vec![3, 6, 12],
        trials: 5,
        seed: 99,
        m: 1,
        digraphon: DigraphonSource::BlowupOfDigraph {
            path: path.to_string_lossy().into_owned(),
        },
    };
    let report = graphonlab::experiment::run(&cfg).unwrap();
    assert!(report.all_pass, "{:?}", report.verdicts);
    println!("[PASS] experiment runner: blow-up pullback verdicts all green");
}
