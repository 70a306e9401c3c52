//! Experiment harness: configuration, parallel execution of independent
//! runs, statistics, scaling fits and file output.
//!
//! An experiment is a list of settings (variant × `(n, r)` pair, variants
//! outermost) with `runs_per_setting` runs each. Run `j` of setting `i` uses
//! the seed [`exec::derive_seed`]`(base_seed, i, j)`, so results do not depend
//! on the number of worker threads or on scheduling.
//!
//! Files written to the output directory:
//!
//! * `runs.csv`: one line per run, header [`output::RUNS_HEADER`].
//! * `summary.csv`: one line per setting, header [`output::SUMMARY_HEADER`].
//! * `fit.csv`: scaling-fit residuals per variant when a variant has at
//!   least two settings.
//! * `trace.jsonl`: trace rows when tracing is enabled.
//! * `meta.json`: generator identity, configuration and a timestamp. The
//!   other files carry no timestamps and are byte-identical across reruns.

pub mod config;
pub mod exec;
pub mod fit;
pub mod output;
pub mod stats;

use std::fs::{self, File};
use std::io::BufWriter;
use std::path::Path;

use thiserror::Error;

pub use config::{ExperimentConfig, RawConfig, TraceSetting};
pub use exec::{derive_seed, RunJob};
pub use fit::{fit_scaling, ScalingFit, ScalingModel};
pub use stats::{summarize, SettingSummary};

use crate::algorithms::{default_budget, RunError, RunRecord};
use crate::domain::GENERATOR_NAME;
use crate::problems::Benchmark;
use output::IndexedRecord;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Run(#[from] RunError),
    #[error("no run records to summarize")]
    NoRecords,
    #[error("records from different settings: {0}")]
    MixedSettings(String),
    #[error("degenerate scaling fit: {0}")]
    DegenerateFit(String),
    #[error("{0} run(s) hit the iteration budget before covering the front")]
    Censored(usize),
}

impl HarnessError {
    /// Process exit status: 1 configuration, 2 I/O, 3 censored runs under
    /// `strict_budget`.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Io { .. } => 2,
            HarnessError::Censored(_) => 3,
            _ => 1,
        }
    }

    fn io(path: &Path, source: std::io::Error) -> Self {
        HarnessError::Io {
            path: path.display().to_string(),
            source,
        }
    }
}

/// Runs and summaries of one experiment.
#[derive(Debug, Clone)]
pub struct ExperimentOutcome {
    /// One per setting, in setting order.
    pub summaries: Vec<SettingSummary>,
    /// Grouped by setting, in run-index order within each setting.
    pub records: Vec<RunRecord>,
    pub runs_per_setting: usize,
    /// One fit per variant with at least two settings.
    pub fits: Vec<ScalingFit>,
}

impl ExperimentOutcome {
    pub fn censored(&self) -> usize {
        self.records.iter().filter(|r| r.censored).count()
    }

    fn indexed(&self) -> impl Iterator<Item = IndexedRecord<'_>> {
        let k = self.runs_per_setting;
        self.records
            .iter()
            .enumerate()
            .map(move |(i, record)| IndexedRecord {
                run_index: i % k,
                record,
            })
    }
}

/// All jobs of `config` in setting/run order.
pub fn plan_jobs(config: &ExperimentConfig) -> Vec<RunJob> {
    config
        .settings()
        .into_iter()
        .enumerate()
        .flat_map(|(setting_index, (variant, shape))| {
            let benchmark = Benchmark::new(config.benchmark, shape);
            let budget = default_budget(shape, config.budget_multiplier);
            let plan = config.trace.plan(shape);
            (0..config.runs_per_setting).map(move |run_index| RunJob {
                setting_index,
                run_index,
                variant,
                benchmark,
                seed: derive_seed(config.base_seed, setting_index, run_index),
                budget,
                plan,
            })
        })
        .collect()
}

/// Executes every run of `config`, summarizes per setting, fits the scaling
/// model, and writes the output files when an output directory is set.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentOutcome, HarnessError> {
    config.validate()?;
    if let Some(dir) = &config.out_dir {
        fs::create_dir_all(dir).map_err(|e| HarnessError::io(dir, e))?;
    }
    let jobs = plan_jobs(config);
    let records = exec::execute(&jobs, config.threads)?;

    let summaries = records
        .chunks(config.runs_per_setting)
        .map(summarize)
        .collect::<Result<Vec<_>, _>>()?;

    let fits = config
        .variants
        .iter()
        .filter_map(|&variant| {
            let group: Vec<SettingSummary> = summaries
                .iter()
                .filter(|s| s.variant == variant)
                .cloned()
                .collect();
            (group.len() >= 2).then(|| fit_scaling(&group, config.fit_model))
        })
        .collect::<Result<Vec<_>, _>>()?;

    let outcome = ExperimentOutcome {
        summaries,
        records,
        runs_per_setting: config.runs_per_setting,
        fits,
    };
    if let Some(dir) = &config.out_dir {
        write_outputs(dir, config, &outcome)?;
    }

    let censored = outcome.censored();
    if censored > 0 {
        log::warn!("{censored} run(s) were censored at the iteration budget");
        if config.strict_budget {
            return Err(HarnessError::Censored(censored));
        }
    }
    Ok(outcome)
}

fn create(dir: &Path, name: &str) -> Result<(BufWriter<File>, std::path::PathBuf), HarnessError> {
    let path = dir.join(name);
    let file = File::create(&path).map_err(|e| HarnessError::io(&path, e))?;
    Ok((BufWriter::new(file), path))
}

pub fn write_outputs(
    dir: &Path,
    config: &ExperimentConfig,
    outcome: &ExperimentOutcome,
) -> Result<(), HarnessError> {
    let (w, path) = create(dir, "runs.csv")?;
    output::write_runs(w, outcome.indexed()).map_err(|e| HarnessError::io(&path, e))?;

    let (w, path) = create(dir, "summary.csv")?;
    output::write_summary(w, &outcome.summaries).map_err(|e| HarnessError::io(&path, e))?;

    if !outcome.fits.is_empty() {
        let (w, path) = create(dir, "fit.csv")?;
        output::write_fits(w, &outcome.fits).map_err(|e| HarnessError::io(&path, e))?;
    }

    if config.trace != TraceSetting::Off {
        let (w, path) = create(dir, "trace.jsonl")?;
        output::write_trace(w, outcome.indexed()).map_err(|e| HarnessError::io(&path, e))?;
    }

    let created = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    let meta = serde_json::json!({
        "generator": GENERATOR_NAME,
        "seed_mixing": "splitmix64(splitmix64(splitmix64(base) ^ setting_index) ^ run_index)",
        "crate_version": env!("CARGO_PKG_VERSION"),
        "created_unix": created,
        "config": config,
    });
    let path = dir.join("meta.json");
    let text = serde_json::to_string_pretty(&meta).expect("serializable metadata");
    fs::write(&path, text + "\n").map_err(|e| HarnessError::io(&path, e))?;
    Ok(())
}
