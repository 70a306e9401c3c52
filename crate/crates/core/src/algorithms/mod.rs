//! The non-dominated archive and the three SEMO main loops.

mod archive;

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use archive::{AcceptRule, Archive, InsertOutcome, Member};

use crate::domain::{ObjectiveVector, ProblemShape, RandomSource, RunSeed, Solution};
use crate::instrumentation::{self, InstrumentationError, InstrumentationPlan, TraceSample};
use crate::operators::{mutate_in_place, Step};
use crate::problems::{Benchmark, BenchmarkKind};

/// Default iteration budget multiplier; see [`default_budget`].
pub const DEFAULT_BUDGET_MULTIPLIER: f64 = 200.0;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RunError {
    #[error("iteration budget must be positive")]
    ZeroBudget,
    #[error(transparent)]
    Instrumentation(#[from] InstrumentationError),
    #[error("unknown algorithm `{0}` (expected semo, delayed or strict)")]
    UnknownVariant(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AlgorithmVariant {
    /// Uniform parent selection; offspring replace equal members.
    Semo,
    /// Parent chosen through a uniformly drawn `f1` value; unmatched draws
    /// skip the iteration.
    DelayedSemo,
    /// Uniform parent selection; offspring weakly dominated by a member,
    /// including equal ones, are rejected.
    StrictSemo,
}

impl AlgorithmVariant {
    pub const ALL: [AlgorithmVariant; 3] = [
        AlgorithmVariant::Semo,
        AlgorithmVariant::DelayedSemo,
        AlgorithmVariant::StrictSemo,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            AlgorithmVariant::Semo => "semo",
            AlgorithmVariant::DelayedSemo => "delayed",
            AlgorithmVariant::StrictSemo => "strict",
        }
    }

    pub fn accept_rule(self) -> AcceptRule {
        match self {
            AlgorithmVariant::Semo | AlgorithmVariant::DelayedSemo => {
                AcceptRule::NotStrictlyDominated
            }
            AlgorithmVariant::StrictSemo => AcceptRule::NotWeaklyDominated,
        }
    }
}

impl fmt::Display for AlgorithmVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AlgorithmVariant {
    type Err = RunError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "semo" => Ok(AlgorithmVariant::Semo),
            "delayed" | "delayed-semo" => Ok(AlgorithmVariant::DelayedSemo),
            "strict" | "strict-semo" => Ok(AlgorithmVariant::StrictSemo),
            other => Err(RunError::UnknownVariant(other.to_string())),
        }
    }
}

/// Which Pareto-front `f1` values have been attained so far.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverageTracker {
    attained: Vec<bool>,
    attained_count: usize,
}

impl CoverageTracker {
    pub fn new(shape: ProblemShape) -> Self {
        Self {
            attained: vec![false; shape.front_size()],
            attained_count: 0,
        }
    }

    /// Flags the front point with first objective `f1`.
    #[inline]
    pub fn mark(&mut self, f1: u64) {
        let slot = &mut self.attained[f1 as usize];
        if !*slot {
            *slot = true;
            self.attained_count += 1;
        }
    }

    /// Flags `fy` if it lies on the front line `f1 + f2 = n (r-1)`.
    #[inline]
    pub fn observe(&mut self, fy: ObjectiveVector) {
        if fy.f1 + fy.f2 == self.attained.len() as u64 - 1 {
            self.mark(fy.f1);
        }
    }

    #[inline]
    pub fn is_attained(&self, f1: u64) -> bool {
        self.attained.get(f1 as usize).copied().unwrap_or(false)
    }

    #[inline]
    pub fn attained_count(&self) -> usize {
        self.attained_count
    }

    /// True once every front point has been attained.
    #[inline]
    pub fn coverage_check(&self) -> bool {
        self.attained_count == self.attained.len()
    }
}

/// Outcome of one run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunRecord {
    pub benchmark: BenchmarkKind,
    pub variant: AlgorithmVariant,
    pub n: usize,
    pub r: u32,
    pub seed: RunSeed,
    /// First iteration `t` whose population `P_t` covers the front, or the
    /// budget when censored.
    pub coverage_iterations: u64,
    /// Function evaluations including the initial solution. Skipped delayed
    /// iterations evaluate nothing.
    pub evaluations: u64,
    pub censored: bool,
    pub budget: u64,
    /// Offspring that replaced a member with an equal objective vector.
    pub equal_replacements: u64,
    pub trace: Vec<TraceSample>,
}

/// What happened in one iteration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IterationReport {
    /// `None` when delayed selection skipped the iteration.
    pub step: Option<Step>,
    pub offspring: Option<ObjectiveVector>,
    pub insert: InsertOutcome,
}

/// `multiplier * n^2 * r * (r + ln n)`, rounded up.
pub fn default_budget(shape: ProblemShape, multiplier: f64) -> u64 {
    let n = shape.n() as f64;
    let r = shape.r() as f64;
    (multiplier * n * n * r * (r + n.ln())).ceil().max(1.0) as u64
}

/// State of one run, advanced one iteration at a time.
#[derive(Debug, Clone)]
pub struct SemoRun {
    variant: AlgorithmVariant,
    benchmark: Benchmark,
    rng: RandomSource,
    archive: Archive,
    tracker: CoverageTracker,
    iteration: u64,
    evaluations: u64,
    equal_replacements: u64,
    scratch: Solution,
    spare: Vec<Solution>,
    /// Potential of the maximum-`f1` member, maintained when tracked.
    potential: Option<u128>,
}

impl SemoRun {
    /// Draws the initial solution (one draw per coordinate, in order) and
    /// seeds the archive with it.
    pub fn new(variant: AlgorithmVariant, benchmark: Benchmark, seed: RunSeed) -> Self {
        let mut rng = seed.rng();
        let x = Solution::random(benchmark.shape, &mut rng);
        let fx = benchmark.evaluate(&x);
        let mut tracker = CoverageTracker::new(benchmark.shape);
        tracker.observe(fx);
        Self {
            variant,
            benchmark,
            rng,
            scratch: x.clone(),
            archive: Archive::singleton(x, fx),
            tracker,
            iteration: 0,
            evaluations: 1,
            equal_replacements: 0,
            spare: Vec::new(),
            potential: None,
        }
    }

    /// Starts maintaining the potential of the maximum-`f1` member.
    pub fn track_potential(&mut self) -> Result<(), InstrumentationError> {
        self.potential = Some(instrumentation::potential_g(&self.archive, self.benchmark.shape)?);
        Ok(())
    }

    pub fn archive(&self) -> &Archive {
        &self.archive
    }

    pub fn tracker(&self) -> &CoverageTracker {
        &self.tracker
    }

    /// Number of completed iterations; the current population is `P_t` for `t = iteration()`.
    pub fn iteration(&self) -> u64 {
        self.iteration
    }

    pub fn evaluations(&self) -> u64 {
        self.evaluations
    }

    pub fn equal_replacements(&self) -> u64 {
        self.equal_replacements
    }

    pub fn potential(&self) -> Option<u128> {
        self.potential
    }

    pub fn is_covered(&self) -> bool {
        self.tracker.coverage_check()
    }

    /// Runs one iteration: parent selection, mutation, evaluation, acceptance.
    pub fn step(&mut self) -> IterationReport {
        self.iteration += 1;
        let shape = self.benchmark.shape;

        let parent_index = match self.variant {
            AlgorithmVariant::Semo | AlgorithmVariant::StrictSemo => {
                self.rng.random_range(0..self.archive.len())
            }
            AlgorithmVariant::DelayedSemo => {
                let target = self.rng.random_range(0..=shape.max_objective());
                match self
                    .archive
                    .members()
                    .binary_search_by_key(&target, |m| m.objectives.f1)
                {
                    Ok(i) => i,
                    Err(_) => {
                        return IterationReport {
                            step: None,
                            offspring: None,
                            insert: InsertOutcome::default(),
                        }
                    }
                }
            }
        };
        let parent = &self.archive.members()[parent_index];
        let parent_objectives = parent.objectives;
        let parent_was_top = parent_index + 1 == self.archive.len();
        self.scratch
            .values_mut()
            .copy_from_slice(parent.solution.values());

        let step = mutate_in_place(self.scratch.values_mut(), shape, &mut self.rng);
        self.evaluations += 1;
        let fy = if step.applied {
            self.benchmark.evaluate_step(
                parent_objectives,
                self.scratch.values(),
                step.index,
                step.old_value,
            )
        } else {
            parent_objectives
        };
        debug_assert_eq!(fy, self.benchmark.evaluate(&self.scratch));

        let rule = self.variant.accept_rule();
        let mut insert = InsertOutcome::default();
        if self.archive.accepts(fy, rule) {
            let fresh = self
                .spare
                .pop()
                .unwrap_or_else(|| Solution::from_raw(vec![0; shape.n()]));
            let y = std::mem::replace(&mut self.scratch, fresh);
            insert = self.archive.insert(y, fy, rule, &mut self.spare);
            debug_assert!(insert.accepted);
            debug_assert!(self.archive.len() <= shape.front_size());
            if insert.replaced_equal {
                self.equal_replacements += 1;
            }
            self.tracker.observe(fy);
            self.update_potential(fy, parent_was_top, &step);
        }

        IterationReport {
            step: Some(step),
            offspring: Some(fy),
            insert,
        }
    }

    fn update_potential(&mut self, fy: ObjectiveVector, parent_was_top: bool, step: &Step) {
        let Some(current) = self.potential else {
            return;
        };
        let shape = self.benchmark.shape;
        let top = self.archive.max_f1_member().expect("non-empty archive");
        if top.objectives != fy {
            return;
        }
        let next = if parent_was_top {
            if step.applied {
                let new_value = top.solution.values()[step.index];
                let old_term = instrumentation::potential_term(shape, step.old_value);
                let new_term = instrumentation::potential_term(shape, new_value);
                // Terms are bounded by the checked total computed earlier.
                current + new_term.expect("checked") - old_term.expect("checked")
            } else {
                current
            }
        } else {
            instrumentation::potential_of(shape, &top.solution).expect("checked")
        };
        debug_assert_eq!(Some(next), instrumentation::potential_of(shape, &top.solution).ok());
        self.potential = Some(next);
    }

    fn sample(&self, plan: &InstrumentationPlan) -> Result<TraceSample, InstrumentationError> {
        let mut row =
            instrumentation::build_sample(&self.archive, self.iteration, plan, self.potential)?;
        row.equal_replacements = Some(self.equal_replacements);
        Ok(row)
    }
}

/// Runs `variant` on `benchmark` until the population covers the Pareto
/// front or `budget` iterations have passed.
pub fn run(
    variant: AlgorithmVariant,
    benchmark: Benchmark,
    seed: RunSeed,
    budget: u64,
    plan: &InstrumentationPlan,
) -> Result<RunRecord, RunError> {
    if budget == 0 {
        return Err(RunError::ZeroBudget);
    }
    let mut state = SemoRun::new(variant, benchmark, seed);
    let mut trace = Vec::new();
    if plan.is_active() {
        if plan.record_potential {
            state.track_potential()?;
        }
        trace.push(state.sample(plan)?);
        while !state.is_covered() && state.iteration() < budget {
            state.step();
            if plan.is_due(state.iteration()) {
                trace.push(state.sample(plan)?);
            }
        }
        if trace.last().map(|s| s.iteration) != Some(state.iteration()) {
            trace.push(state.sample(plan)?);
        }
    } else {
        while !state.is_covered() && state.iteration() < budget {
            state.step();
        }
    }

    let shape = benchmark.shape;
    Ok(RunRecord {
        benchmark: benchmark.kind,
        variant,
        n: shape.n(),
        r: shape.r(),
        seed,
        coverage_iterations: state.iteration(),
        evaluations: state.evaluations(),
        censored: !state.is_covered(),
        budget,
        equal_replacements: state.equal_replacements(),
        trace,
    })
}
