//! Experiment configuration from a flat `key = value` file plus overrides.
//!
//! Recognised keys (dashes and underscores are interchangeable):
//!
//! | key                 | value                                   | default  |
//! |---------------------|-----------------------------------------|----------|
//! | `problem`           | `gomm` or `glotz`                       | `gomm`   |
//! | `algo`              | comma list of `semo`, `delayed`, `strict` | `semo,strict` |
//! | `n`                 | comma list of positive integers         | required |
//! | `r`                 | comma list of integers ≥ 2              | required |
//! | `runs`              | runs per setting                        | `100`    |
//! | `seed`              | base seed, `u64`                        | `1`      |
//! | `budget_multiplier` | budget is `k · n² r (r + ln n)`         | `200`    |
//! | `out`               | output directory                        | none     |
//! | `trace`             | `true` to trace every `n r` iterations  | `false`  |
//! | `trace_every`       | trace interval; implies `trace`         | none     |
//! | `threads`           | worker count                            | rayon default |
//! | `strict_budget`     | exit with code 3 if any run is censored | `false`  |
//! | `fit_model`         | `n2r-rlogn` or `n2r2logn`               | `n2r-rlogn` |
//!
//! Lines starting with `#` and blank lines are ignored.

use std::collections::BTreeMap;
use std::path::PathBuf;

use serde::Serialize;

use super::fit::ScalingModel;
use super::HarnessError;
use crate::algorithms::{AlgorithmVariant, DEFAULT_BUDGET_MULTIPLIER};
use crate::domain::ProblemShape;
use crate::instrumentation::InstrumentationPlan;
use crate::problems::BenchmarkKind;

const KEYS: [&str; 13] = [
    "problem",
    "algo",
    "n",
    "r",
    "runs",
    "seed",
    "budget_multiplier",
    "out",
    "trace",
    "trace_every",
    "threads",
    "strict_budget",
    "fit_model",
];

/// Raw `key -> value` pairs before validation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawConfig(BTreeMap<String, String>);

impl RawConfig {
    pub fn parse(text: &str) -> Result<Self, HarnessError> {
        let mut map = BTreeMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                HarnessError::Config(format!("line {}: expected key=value, got `{line}`", lineno + 1))
            })?;
            let key = normalize_key(key)?;
            map.insert(key, value.trim().to_string());
        }
        Ok(Self(map))
    }

    pub fn set(&mut self, key: &str, value: impl Into<String>) -> Result<(), HarnessError> {
        self.0.insert(normalize_key(key)?, value.into());
        Ok(())
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(String::as_str)
    }

    /// Values from `other` win.
    pub fn merge(&mut self, other: RawConfig) {
        self.0.extend(other.0);
    }
}

fn normalize_key(key: &str) -> Result<String, HarnessError> {
    let key = key.trim().to_ascii_lowercase().replace('-', "_");
    if KEYS.contains(&key.as_str()) {
        Ok(key)
    } else {
        Err(HarnessError::Config(format!("unknown configuration key `{key}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TraceSetting {
    Off,
    /// Every `n r` iterations.
    Default,
    Every(u64),
}

impl TraceSetting {
    pub fn plan(self, shape: ProblemShape) -> InstrumentationPlan {
        match self {
            TraceSetting::Off => InstrumentationPlan::none(),
            TraceSetting::Default => {
                InstrumentationPlan::all(InstrumentationPlan::default_interval(shape))
            }
            TraceSetting::Every(k) => InstrumentationPlan::all(k),
        }
    }
}

/// A validated experiment.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub benchmark: BenchmarkKind,
    pub variants: Vec<AlgorithmVariant>,
    /// Cartesian product of the `n` and `r` lists, `n` varying slowest.
    pub shapes: Vec<ProblemShape>,
    pub runs_per_setting: usize,
    pub base_seed: u64,
    pub budget_multiplier: f64,
    pub out_dir: Option<PathBuf>,
    pub trace: TraceSetting,
    pub threads: Option<usize>,
    pub strict_budget: bool,
    pub fit_model: ScalingModel,
}

impl ExperimentConfig {
    /// Configuration with the defaults and the given sweep.
    pub fn new(benchmark: BenchmarkKind, variants: Vec<AlgorithmVariant>, shapes: Vec<ProblemShape>) -> Self {
        Self {
            benchmark,
            variants,
            shapes,
            runs_per_setting: 100,
            base_seed: 1,
            budget_multiplier: DEFAULT_BUDGET_MULTIPLIER,
            out_dir: None,
            trace: TraceSetting::Off,
            threads: None,
            strict_budget: false,
            fit_model: ScalingModel::N2RRLogN,
        }
    }

    pub fn from_raw(raw: &RawConfig) -> Result<Self, HarnessError> {
        let benchmark = match raw.get("problem") {
            Some(v) => v.parse().map_err(|e| HarnessError::Config(format!("{e}")))?,
            None => BenchmarkKind::GOneMinMax,
        };
        let variants = match raw.get("algo") {
            Some(v) => parse_list(v, "algo", |s| {
                s.parse::<AlgorithmVariant>().map_err(|e| e.to_string())
            })?,
            None => vec![AlgorithmVariant::Semo, AlgorithmVariant::StrictSemo],
        };
        let ns: Vec<usize> = parse_list(
            raw.get("n").ok_or_else(|| HarnessError::Config("missing `n`".into()))?,
            "n",
            |s| s.parse::<usize>().map_err(|e| e.to_string()),
        )?;
        let rs: Vec<u32> = parse_list(
            raw.get("r").ok_or_else(|| HarnessError::Config("missing `r`".into()))?,
            "r",
            |s| s.parse::<u32>().map_err(|e| e.to_string()),
        )?;
        let shapes = ns
            .iter()
            .flat_map(|&n| rs.iter().map(move |&r| (n, r)))
            .map(|(n, r)| ProblemShape::new(n, r).map_err(|e| HarnessError::Config(e.to_string())))
            .collect::<Result<Vec<_>, _>>()?;

        let mut config = Self::new(benchmark, variants, shapes);
        if let Some(v) = raw.get("runs") {
            config.runs_per_setting = parse_scalar(v, "runs")?;
        }
        if let Some(v) = raw.get("seed") {
            config.base_seed = parse_scalar(v, "seed")?;
        }
        if let Some(v) = raw.get("budget_multiplier") {
            config.budget_multiplier = parse_scalar(v, "budget_multiplier")?;
        }
        config.out_dir = raw.get("out").filter(|v| !v.is_empty()).map(PathBuf::from);
        if parse_bool(raw.get("trace"), "trace")? {
            config.trace = TraceSetting::Default;
        }
        if let Some(v) = raw.get("trace_every") {
            config.trace = TraceSetting::Every(parse_scalar(v, "trace_every")?);
        }
        if let Some(v) = raw.get("threads") {
            config.threads = Some(parse_scalar(v, "threads")?);
        }
        config.strict_budget = parse_bool(raw.get("strict_budget"), "strict_budget")?;
        if let Some(v) = raw.get("fit_model") {
            config.fit_model = v.parse()?;
        }
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        let bad = |msg: &str| Err(HarnessError::Config(msg.to_string()));
        if self.runs_per_setting == 0 {
            return bad("runs must be at least 1");
        }
        if self.variants.is_empty() || self.shapes.is_empty() {
            return bad("need at least one algorithm and one (n, r) pair");
        }
        if !(self.budget_multiplier.is_finite() && self.budget_multiplier > 0.0) {
            return bad("budget_multiplier must be positive");
        }
        if self.trace == TraceSetting::Every(0) {
            return bad("trace_every must be at least 1");
        }
        if self.threads == Some(0) {
            return bad("threads must be at least 1");
        }
        Ok(())
    }

    /// Settings in execution order: variants outermost, then shapes.
    pub fn settings(&self) -> Vec<(AlgorithmVariant, ProblemShape)> {
        self.variants
            .iter()
            .flat_map(|&v| self.shapes.iter().map(move |&s| (v, s)))
            .collect()
    }
}

fn parse_list<T>(
    value: &str,
    key: &str,
    parse: impl Fn(&str) -> Result<T, String>,
) -> Result<Vec<T>, HarnessError> {
    let items = value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| parse(s).map_err(|e| HarnessError::Config(format!("`{key}`: `{s}`: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    if items.is_empty() {
        return Err(HarnessError::Config(format!("`{key}` is empty")));
    }
    Ok(items)
}

fn parse_scalar<T: std::str::FromStr>(value: &str, key: &str) -> Result<T, HarnessError>
where
    T::Err: std::fmt::Display,
{
    value
        .trim()
        .parse()
        .map_err(|e| HarnessError::Config(format!("`{key}`: `{value}`: {e}")))
}

fn parse_bool(value: Option<&str>, key: &str) -> Result<bool, HarnessError> {
    match value.map(|v| v.trim().to_ascii_lowercase()) {
        None => Ok(false),
        Some(v) => match v.as_str() {
            "true" | "1" | "yes" | "on" => Ok(true),
            "false" | "0" | "no" | "off" | "" => Ok(false),
            _ => Err(HarnessError::Config(format!("`{key}`: expected a boolean, got `{v}`"))),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_file_with_comments() {
        let raw = RawConfig::parse(
            "# paper set 1\nproblem = gomm\nalgo = semo, strict\nn = 20,40,60,80,100\nr = 4\nruns = 100\nbudget-multiplier = 150\n\ntrace_every = 50\n",
        )
        .unwrap();
        let cfg = ExperimentConfig::from_raw(&raw).unwrap();
        assert_eq!(cfg.benchmark, BenchmarkKind::GOneMinMax);
        assert_eq!(cfg.variants, vec![AlgorithmVariant::Semo, AlgorithmVariant::StrictSemo]);
        assert_eq!(cfg.shapes.len(), 5);
        assert_eq!(cfg.settings().len(), 10);
        assert_eq!(cfg.budget_multiplier, 150.0);
        assert_eq!(cfg.trace, TraceSetting::Every(50));
        assert_eq!(cfg.runs_per_setting, 100);
    }

    #[test]
    fn overrides_win() {
        let mut raw = RawConfig::parse("n = 10\nr = 3\nruns = 5\n").unwrap();
        let mut cli = RawConfig::default();
        cli.set("runs", "7").unwrap();
        cli.set("problem", "glotz").unwrap();
        raw.merge(cli);
        let cfg = ExperimentConfig::from_raw(&raw).unwrap();
        assert_eq!(cfg.runs_per_setting, 7);
        assert_eq!(cfg.benchmark, BenchmarkKind::GLotz);
    }

    #[test]
    fn shapes_are_a_product() {
        let raw = RawConfig::parse("n = 100\nr = 2,3,4,5\n").unwrap();
        let cfg = ExperimentConfig::from_raw(&raw).unwrap();
        let pairs: Vec<_> = cfg.shapes.iter().map(|s| (s.n(), s.r())).collect();
        assert_eq!(pairs, vec![(100, 2), (100, 3), (100, 4), (100, 5)]);
    }

    #[test]
    fn rejects_invalid() {
        for text in [
            "n = 10\n",
            "r = 3\n",
            "n = 10\nr = 1\n",
            "n = 0\nr = 3\n",
            "n = 10\nr = 3\nruns = 0\n",
            "n = 10\nr = 3\nalgo = nsga2\n",
            "n = 10\nr = 3\nproblem = cocz\n",
            "n = 10\nr = 3\ntrace_every = 0\n",
            "n = 10\nr = 3\nstrict_budget = maybe\n",
            "n = ten\nr = 3\n",
        ] {
            let res = RawConfig::parse(text).and_then(|raw| ExperimentConfig::from_raw(&raw));
            assert!(matches!(res, Err(HarnessError::Config(_))), "{text:?}");
        }
        assert!(RawConfig::parse("colour = blue\n").is_err());
        assert!(RawConfig::parse("just words\n").is_err());
    }
}
