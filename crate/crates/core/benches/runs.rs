use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use mvsemo::algorithms::AlgorithmVariant;
use mvsemo::domain::{ProblemShape, RunSeed};
use mvsemo::harness::{self, exec, ExperimentConfig};
use mvsemo::instrumentation::InstrumentationPlan;
use mvsemo::problems::{Benchmark, BenchmarkKind};

fn jobs() -> Vec<harness::RunJob> {
    let shapes = vec![ProblemShape::new(20, 3).unwrap(), ProblemShape::new(30, 4).unwrap()];
    let mut cfg = ExperimentConfig::new(
        BenchmarkKind::GOneMinMax,
        vec![AlgorithmVariant::Semo, AlgorithmVariant::StrictSemo],
        shapes,
    );
    cfg.runs_per_setting = 16;
    harness::plan_jobs(&cfg)
}

fn executors(c: &mut Criterion) {
    let jobs = jobs();
    let mut group = c.benchmark_group("experiment");
    group.sample_size(10);
    group.bench_function("sequential", |b| b.iter(|| exec::execute_sequential(&jobs).unwrap()));
    #[cfg(feature = "parallel")]
    group.bench_function("parallel", |b| b.iter(|| exec::execute_parallel(&jobs, None).unwrap()));
    group.finish();
}

fn single_runs(c: &mut Criterion) {
    let mut group = c.benchmark_group("run");
    for kind in [BenchmarkKind::GOneMinMax, BenchmarkKind::GLotz] {
        let b = Benchmark::new(kind, ProblemShape::new(20, 3).unwrap());
        for variant in AlgorithmVariant::ALL {
            let id = BenchmarkId::new(kind.as_str(), variant.as_str());
            let mut seed = 0;
            group.bench_function(id, |bench| {
                bench.iter(|| {
                    seed += 1;
                    mvsemo::run(variant, b, RunSeed(seed), u64::MAX, &InstrumentationPlan::none()).unwrap()
                })
            });
        }
    }
    group.finish();
}

criterion_group!(benches, executors, single_runs);
criterion_main!(benches);
