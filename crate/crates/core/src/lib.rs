//! r-valued SEMO variants on the G-OneMinMax and G-LOTZ benchmarks.
//!
//! The crate is split into the shared domain vocabulary ([`domain`]), the
//! benchmark functions and their Pareto oracles ([`problems`]), the variation
//! and selection operators ([`operators`]), the archive and main loops
//! ([`algorithms`]), proof-quantity traces ([`instrumentation`]) and the
//! experiment harness ([`harness`]).

pub mod algorithms;
pub mod domain;
pub mod harness;
pub mod instrumentation;
pub mod operators;
pub mod problems;

pub use algorithms::{
    run, Archive, AlgorithmVariant, CoverageTracker, InsertOutcome, Member, RunRecord, SemoRun,
};
pub use domain::{compare, Dominance, ObjectiveVector, ProblemShape, RandomSource, RunSeed, Solution};
pub use instrumentation::{InstrumentationPlan, TraceSample};
pub use problems::{Benchmark, BenchmarkKind, ParetoFrontDescriptor};
