use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use mvsemo::harness::{self, ExperimentConfig, ExperimentOutcome, HarnessError, RawConfig};

/// Run r-valued SEMO variants on G-OneMinMax or G-LOTZ and record the
/// number of iterations until the population covers the Pareto front.
#[derive(Debug, Parser)]
#[command(name = "mvsemo", version)]
struct Cli {
    /// key=value configuration file; flags override its entries.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Benchmark: gomm or glotz.
    #[arg(long)]
    problem: Option<String>,
    /// Algorithms, comma separated: semo, delayed, strict.
    #[arg(long)]
    algo: Option<String>,
    /// Problem sizes, comma separated.
    #[arg(long)]
    n: Option<String>,
    /// Values per variable, comma separated.
    #[arg(long)]
    r: Option<String>,
    /// Runs per setting.
    #[arg(long)]
    runs: Option<String>,
    /// Base seed.
    #[arg(long)]
    seed: Option<String>,
    /// Budget is this multiple of n² r (r + ln n) iterations.
    #[arg(long = "budget-multiplier")]
    budget_multiplier: Option<String>,
    /// Output directory for runs.csv, summary.csv, fit.csv, trace.jsonl, meta.json.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Trace every n·r iterations.
    #[arg(long)]
    trace: bool,
    /// Trace every K iterations.
    #[arg(long = "trace-every")]
    trace_every: Option<String>,
    /// Worker threads (falls back to MVSEMO_THREADS).
    #[arg(long)]
    threads: Option<String>,
    /// Exit with status 3 if any run is censored.
    #[arg(long = "strict-budget")]
    strict_budget: bool,
    /// Scaling model: n2r-rlogn or n2r2logn.
    #[arg(long = "fit-model")]
    fit_model: Option<String>,
}

impl Cli {
    fn into_config(self) -> Result<ExperimentConfig, HarnessError> {
        let mut raw = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| {
                    HarnessError::Config(format!("cannot read {}: {e}", path.display()))
                })?;
                RawConfig::parse(&text)?
            }
            None => RawConfig::default(),
        };
        if raw.get("threads").is_none() {
            if let Ok(v) = std::env::var("MVSEMO_THREADS") {
                raw.set("threads", v)?;
            }
        }
        let mut flags = RawConfig::default();
        let pairs = [
            ("problem", self.problem),
            ("algo", self.algo),
            ("n", self.n),
            ("r", self.r),
            ("runs", self.runs),
            ("seed", self.seed),
            ("budget_multiplier", self.budget_multiplier),
            ("out", self.out.map(|p| p.display().to_string())),
            ("trace_every", self.trace_every),
            ("threads", self.threads),
            ("fit_model", self.fit_model),
        ];
        for (key, value) in pairs {
            if let Some(v) = value {
                flags.set(key, v)?;
            }
        }
        if self.trace {
            flags.set("trace", "true")?;
        }
        if self.strict_budget {
            flags.set("strict_budget", "true")?;
        }
        raw.merge(flags);
        ExperimentConfig::from_raw(&raw)
    }
}

fn report(outcome: &ExperimentOutcome) {
    println!(
        "{:<6} {:<8} {:>5} {:>3} {:>5} {:>14} {:>12} {:>10} {:>9}",
        "bench", "variant", "n", "r", "runs", "mean", "std", "median", "censored"
    );
    for s in &outcome.summaries {
        println!(
            "{:<6} {:<8} {:>5} {:>3} {:>5} {:>14.1} {:>12.1} {:>10} {:>9}",
            s.benchmark.as_str(),
            s.variant.as_str(),
            s.n,
            s.r,
            s.runs,
            s.mean,
            s.std,
            s.median,
            s.censored
        );
    }
    for fit in &outcome.fits {
        let ratios: Vec<String> = fit
            .residuals
            .iter()
            .map(|r| format!("n={} r={}: {:.3}", r.n, r.r, r.ratio))
            .collect();
        println!(
            "fit {} {}: c = {:.4} · {}; ratios [{}]",
            fit.benchmark,
            fit.variant,
            fit.c_hat,
            fit.model,
            ratios.join(", ")
        );
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = cli.into_config().and_then(|config| harness::run_experiment(&config));
    match result {
        Ok(outcome) => {
            report(&outcome);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
