//! Fan-out of independent runs.
//!
//! With the `parallel` feature (default) runs are spread over a rayon pool;
//! without it they execute one after another. Each run owns its random
//! source, so the returned records are identical either way and always come
//! back in job order.

use crate::algorithms::{run, AlgorithmVariant, RunError, RunRecord};
use crate::domain::RunSeed;
use crate::instrumentation::InstrumentationPlan;
use crate::problems::Benchmark;

/// splitmix64 finalizer increment.
const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// The splitmix64 output function applied to `z + GOLDEN_GAMMA`.
#[inline]
pub fn splitmix64(z: u64) -> u64 {
    let mut z = z.wrapping_add(GOLDEN_GAMMA);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Per-run seed: `splitmix64(splitmix64(splitmix64(base) ^ setting) ^ run)`.
pub fn derive_seed(base: u64, setting_index: usize, run_index: usize) -> RunSeed {
    let s = splitmix64(splitmix64(base) ^ setting_index as u64);
    RunSeed(splitmix64(s ^ run_index as u64))
}

/// Everything one run needs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunJob {
    pub setting_index: usize,
    pub run_index: usize,
    pub variant: AlgorithmVariant,
    pub benchmark: Benchmark,
    pub seed: RunSeed,
    pub budget: u64,
    pub plan: InstrumentationPlan,
}

impl RunJob {
    pub fn execute(&self) -> Result<RunRecord, RunError> {
        run(self.variant, self.benchmark, self.seed, self.budget, &self.plan)
    }
}

pub fn execute_sequential(jobs: &[RunJob]) -> Result<Vec<RunRecord>, RunError> {
    jobs.iter().map(RunJob::execute).collect()
}

/// Runs `jobs` on a pool of `threads` workers (rayon's default when `None`).
#[cfg(feature = "parallel")]
pub fn execute_parallel(
    jobs: &[RunJob],
    threads: Option<usize>,
) -> Result<Vec<RunRecord>, RunError> {
    use rayon::prelude::*;

    let work = || jobs.par_iter().map(RunJob::execute).collect();
    match threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build()
            .expect("thread pool")
            .install(work),
        None => work(),
    }
}

/// Parallel when the `parallel` feature is on, sequential otherwise.
pub fn execute(jobs: &[RunJob], threads: Option<usize>) -> Result<Vec<RunRecord>, RunError> {
    #[cfg(feature = "parallel")]
    {
        execute_parallel(jobs, threads)
    }
    #[cfg(not(feature = "parallel"))]
    {
        if threads.is_some_and(|t| t > 1) {
            log::warn!("built without the `parallel` feature; ignoring thread count");
        }
        execute_sequential(jobs)
    }
}
