//! graphonlab: step-function graphons and k-digraphons, cut-norm and edit
//! distances with exact and heuristic solvers, seeded samplers, randomized
//! rounding, certificate search, and a reproducible experiment runner.

pub mod dist;
pub mod error;
pub mod experiment;
pub mod graph;
pub mod kernel;
pub mod property;
pub mod sample;
pub mod tester;

pub use error::{Error, Result};
pub use graph::{
    is_consistent_coloring, shadow, FractionalColoring, KColoredDigraph, SimpleGraph,
};
pub use kernel::{
    average, digraphon_of_fractional, kernel_of_graph, pullback_coloring, AnalyticKernel,
    DiagonalRule, KDigraphon, Partition, StepKernel,
};
pub use sample::RngSpec;
