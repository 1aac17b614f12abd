//! Command-line front end: sampling, distances, rounding, pullbacks,
//! testers, estimators and the experiment runner.

use clap::{Parser, Subcommand};
use graphonlab::dist::{
    cut_distance_digraphons, cut_distance_fractional, cut_distance_graphs_labeled, cut_norm_with,
    delta_cut_upper, edit_distance_colored, edit_distance_digraphons, edit_distance_graphs,
    CutNormMode, CutNormOptions, DeltaMode,
};
use graphonlab::experiment::{self, ExperimentConfig};
use graphonlab::graph::{FractionalColoring, KColoredDigraph, SimpleGraph};
use graphonlab::kernel::{pullback_coloring, KDigraphon, StepKernel};
use graphonlab::property::{ColoredParameter, GraphParameter, TestProperty};
use graphonlab::sample::{
    self, generate, round_coloring_with, GeneratorSpec, RngSpec, RoundingMode,
};
use graphonlab::tester::{
    acceptance_probability, certified_parameter, estimate_parameter, CertifiedMode, TesterSpec,
};
use graphonlab::{shadow, Error};
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "graphonlab", version, about = "Graph limits and property-testing toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Draw a seeded sample: induced subgraph, W-random graph, digraphon
    /// sample, or a generator-family graph.
    Sample {
        /// Graph file to sample an induced subgraph from (needs --r).
        #[arg(long)]
        graph: Option<PathBuf>,
        /// Colored digraph file to sample from (needs --r).
        #[arg(long)]
        digraph: Option<PathBuf>,
        /// Step-kernel graphon file to sample a W-random graph from (needs --n).
        #[arg(long)]
        graphon: Option<PathBuf>,
        /// k-digraphon file to sample a colored digraph from (needs --r).
        #[arg(long)]
        digraphon: Option<PathBuf>,
        /// Generator spec: er:n,p | bisect:n,p_in,p_out | cycle:n | complete:n.
        #[arg(long)]
        gen: Option<String>,
        /// Sample size for induced/digraphon sampling.
        #[arg(long)]
        r: Option<usize>,
        /// Node count for W-random graphs.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        stream: u64,
        /// Output path (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cut norm of a step kernel, with the optimizing rectangle as witness.
    Cutnorm {
        #[arg(long)]
        kernel: PathBuf,
        #[arg(long, conflicts_with = "heuristic")]
        exact: bool,
        #[arg(long)]
        heuristic: bool,
        #[arg(long, default_value_t = 32)]
        starts: usize,
    },
    /// Distances between two objects of the same kind.
    Dist {
        /// d1 | dcut | delta
        #[arg(long)]
        metric: String,
        /// graph | digraph | fractional | kernel | digraphon
        #[arg(long)]
        kind: String,
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        /// exact | heuristic | auto (dcut); exact-perm | align-heuristic (delta)
        #[arg(long)]
        mode: Option<String>,
    },
    /// Randomized rounding of a fractional coloring.
    Round {
        #[arg(long)]
        fractional: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        stream: u64,
        /// Couple both directions of each pair on one uniform draw.
        #[arg(long)]
        coupled: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Pull a k-digraphon's coloring back onto a graph.
    Pullback {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        digraphon: PathBuf,
        #[arg(long)]
        m: u8,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Shadow of a colored digraph: keep colors <= m, forget orientation.
    Shadow {
        #[arg(long)]
        digraph: PathBuf,
        #[arg(long)]
        m: u8,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Acceptance probability of a sampling tester on a graph.
    Test {
        /// Test property: maxcut:c=0.2 | complete | has-edge.
        #[arg(long)]
        property: String,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 2000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        stream: u64,
        #[arg(long)]
        graph: PathBuf,
    },
    /// Sample-based parameter estimation.
    Estimate {
        /// edge-density | maxcut
        #[arg(long)]
        param: String,
        /// Sample size.
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 500)]
        trials: usize,
        #[arg(long, default_value_t = 0.1)]
        epsilon: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        stream: u64,
        #[arg(long)]
        graph: PathBuf,
    },
    /// Maximum of a colored parameter over certificates with a fixed shadow.
    Certify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value = "two-colored")]
        param: String,
        #[arg(long)]
        k: u8,
        #[arg(long)]
        m: u8,
        /// exact | heuristic
        #[arg(long, default_value = "exact")]
        mode: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the achieving certificate here.
        #[arg(long)]
        witness_out: Option<PathBuf>,
    },
    /// Run a config-driven experiment; exit code is nonzero iff a verdict
    /// fails.
    Exp {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("GRAPHONLAB_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn emit(text: String, out: Option<PathBuf>) -> graphonlab::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn dispatch(cmd: Command) -> graphonlab::Result<ExitCode> {
    match cmd {
        Command::Sample {
            graph,
            digraph,
            graphon,
            digraphon,
            gen,
            r,
            n,
            seed,
            stream,
            out,
        } => {
            let rng = RngSpec::new(seed, stream);
            let picked = [
                graph.is_some(),
                digraph.is_some(),
                graphon.is_some(),
                digraphon.is_some(),
                gen.is_some(),
            ]
            .iter()
            .filter(|&&x| x)
            .count();
            if picked != 1 {
                return Err(Error::invalid(
                    "pass exactly one of --graph, --digraph, --graphon, --digraphon, --gen",
                ));
            }
            if let Some(path) = graph {
                let g = SimpleGraph::load(path)?;
                let r = r.ok_or_else(|| Error::invalid("--graph needs --r"))?;
                emit(sample::sample_induced(&g, r, rng)?.to_text(), out)?;
            } else if let Some(path) = digraph {
                let l = KColoredDigraph::load(path)?;
                let r = r.ok_or_else(|| Error::invalid("--digraph needs --r"))?;
                emit(sample::sample_induced_colored(&l, r, rng)?.to_text(), out)?;
            } else if let Some(path) = graphon {
                let u = StepKernel::load(path)?;
                let n = n.ok_or_else(|| Error::invalid("--graphon needs --n"))?;
                emit(sample::sample_graph_from_graphon(&u, n, rng)?.to_text(), out)?;
            } else if let Some(path) = digraphon {
                let w = KDigraphon::load(path)?;
                let r = r.ok_or_else(|| Error::invalid("--digraphon needs --r"))?;
                emit(sample::sample_from_digraphon(&w, r, rng)?.to_text(), out)?;
            } else if let Some(spec) = gen {
                let spec = GeneratorSpec::parse(&spec)?;
                emit(generate(&spec, rng).to_text(), out)?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Cutnorm {
            kernel,
            exact,
            heuristic,
            starts,
        } => {
            let w = StepKernel::load(kernel)?;
            let mode = if exact {
                CutNormMode::Exact
            } else if heuristic {
                CutNormMode::Heuristic
            } else {
                CutNormMode::Auto
            };
            let r = cut_norm_with(&w, mode, &CutNormOptions::with_starts(starts))?;
            println!(
                "{}",
                json!({
                    "value": r.value,
                    "S": r.witness_s,
                    "T": r.witness_t,
                    "exact": r.exact,
                })
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Dist {
            metric,
            kind,
            a,
            b,
            mode,
        } => {
            let report = dist_command(&metric, &kind, &a, &b, mode.as_deref())?;
            println!("{report}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Round {
            fractional,
            seed,
            stream,
            coupled,
            out,
        } => {
            let h = FractionalColoring::load(fractional)?;
            let mode = if coupled {
                RoundingMode::Coupled
            } else {
                RoundingMode::Independent
            };
            let l = round_coloring_with(&h, mode, RngSpec::new(seed, stream));
            emit(l.to_text(), out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Pullback {
            graph,
            digraphon,
            m,
            out,
        } => {
            let f = SimpleGraph::load(graph)?;
            let w = KDigraphon::load(digraphon)?;
            let pb = pullback_coloring(&f, &w, m)?;
            eprintln!(
                "{}",
                json!({"degenerate_cells": pb.degenerate_cells, "n": f.n(), "k": w.k()})
            );
            emit(pb.coloring.to_text(), out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Shadow { digraph, m, out } => {
            let l = KColoredDigraph::load(digraph)?;
            emit(shadow(&l, m)?.to_text(), out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Test {
            property,
            r,
            trials,
            seed,
            stream,
            graph,
        } => {
            let g = SimpleGraph::load(graph)?;
            let prop = TestProperty::parse(&property)?;
            let spec = TesterSpec::new(prop, r, trials)?;
            let rep = acceptance_probability(&g, &spec, RngSpec::new(seed, stream))?;
            println!(
                "{}",
                json!({
                    "estimate": rep.acceptance,
                    "ci": rep.ci_halfwidth,
                    "trials": rep.trials,
                    "seed": seed,
                    "r": rep.r,
                    "accept_threshold": spec.accept_threshold,
                    "reject_threshold": spec.reject_threshold,
                })
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Estimate {
            param,
            k,
            trials,
            epsilon,
            seed,
            stream,
            graph,
        } => {
            let g = SimpleGraph::load(graph)?;
            let f = GraphParameter::parse(&param)?;
            let rep = estimate_parameter(&g, f, k, trials, epsilon, RngSpec::new(seed, stream))?;
            println!("{}", serde_json::to_string(&rep).expect("report serializes"));
            Ok(ExitCode::SUCCESS)
        }
        Command::Certify {
            graph,
            param,
            k,
            m,
            mode,
            seed,
            witness_out,
        } => {
            let g = SimpleGraph::load(graph)?;
            let p = ColoredParameter::parse(&param)?;
            let mode = match mode.as_str() {
                "exact" => CertifiedMode::Exact,
                "heuristic" => CertifiedMode::Heuristic,
                other => return Err(Error::invalid(format!("unknown mode `{other}`"))),
            };
            let v = certified_parameter(&g, p, k, m, mode, RngSpec::new(seed, 0))?;
            println!("{}", json!({"value": v.value, "exact": v.exact}));
            if let (Some(path), Some(witness)) = (witness_out, v.witness) {
                witness.save(path)?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Exp { config, out } => {
            let cfg = ExperimentConfig::load(config)?;
            let report = experiment::run(&cfg)?;
            report.write(&out)?;
            for v in &report.verdicts {
                println!(
                    "[{}] {}: {}",
                    if v.pass { "PASS" } else { "FAIL" },
                    v.name,
                    v.detail
                );
            }
            if report.all_pass {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::FAILURE)
            }
        }
    }
}

fn dist_command(
    metric: &str,
    kind: &str,
    a: &PathBuf,
    b: &PathBuf,
    mode: Option<&str>,
) -> graphonlab::Result<String> {
    let cut_mode = match mode {
        Some("exact") => CutNormMode::Exact,
        Some("heuristic") => CutNormMode::Heuristic,
        None | Some("auto") => CutNormMode::Auto,
        Some(other) if metric != "delta" => {
            return Err(Error::invalid(format!("unknown mode `{other}`")))
        }
        _ => CutNormMode::Auto,
    };
    let out = match (kind, metric) {
        ("graph", "d1") => {
            let (g, h) = (SimpleGraph::load(a)?, SimpleGraph::load(b)?);
            json!({"value": edit_distance_graphs(&g, &h)?, "exact": true})
        }
        ("graph", "dcut") => {
            let (g, h) = (SimpleGraph::load(a)?, SimpleGraph::load(b)?);
            let r = cut_distance_graphs_labeled(&g, &h, cut_mode)?;
            json!({"value": r.value, "S": r.witness_s, "T": r.witness_t, "exact": r.exact})
        }
        ("graph", "delta") => {
            let (g, h) = (SimpleGraph::load(a)?, SimpleGraph::load(b)?);
            let delta_mode = match mode {
                Some("exact-perm") => DeltaMode::ExactPerm,
                Some("align-heuristic") | None => DeltaMode::AlignHeuristic,
                Some(other) => return Err(Error::invalid(format!("unknown mode `{other}`"))),
            };
            let r = delta_cut_upper(&g, &h, delta_mode)?;
            json!({"value": r.value, "permutation": r.permutation, "exhaustive": r.exhaustive,
                   "upper_bound": true})
        }
        ("digraph", "d1") => {
            let (g, h) = (KColoredDigraph::load(a)?, KColoredDigraph::load(b)?);
            json!({"value": edit_distance_colored(&g, &h)?, "exact": true})
        }
        ("fractional", "dcut") => {
            let (g, h) = (FractionalColoring::load(a)?, FractionalColoring::load(b)?);
            let d = cut_distance_fractional(&g, &h, cut_mode)?;
            json!({"value": d.value, "exact": d.exact})
        }
        ("kernel", "dcut") => {
            let (g, h) = (StepKernel::load(a)?, StepKernel::load(b)?);
            let r = cut_norm_with(&g.sub(&h), cut_mode, &CutNormOptions::default())?;
            json!({"value": r.value, "S": r.witness_s, "T": r.witness_t, "exact": r.exact})
        }
        ("kernel", "d1") => {
            let (g, h) = (StepKernel::load(a)?, StepKernel::load(b)?);
            json!({"value": g.sub(&h).l1_norm(), "exact": true})
        }
        ("digraphon", "dcut") => {
            let (g, h) = (KDigraphon::load(a)?, KDigraphon::load(b)?);
            let d = cut_distance_digraphons(&g, &h, cut_mode)?;
            json!({"value": d.value, "exact": d.exact})
        }
        ("digraphon", "d1") => {
            let (g, h) = (KDigraphon::load(a)?, KDigraphon::load(b)?);
            json!({"value": edit_distance_digraphons(&g, &h)?, "exact": true})
        }
        (kind, metric) => {
            return Err(Error::invalid(format!(
                "unsupported combination kind=`{kind}` metric=`{metric}`"
            )))
        }
    };
    Ok(out.to_string())
}
