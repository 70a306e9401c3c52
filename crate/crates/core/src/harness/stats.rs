use serde::{Deserialize, Serialize};

use super::HarnessError;
use crate::algorithms::{AlgorithmVariant, RunRecord};
use crate::problems::BenchmarkKind;

/// Statistics of the coverage iterations of one setting's runs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SettingSummary {
    pub benchmark: BenchmarkKind,
    pub variant: AlgorithmVariant,
    pub n: usize,
    pub r: u32,
    pub runs: usize,
    pub mean: f64,
    /// Sample standard deviation (divisor `k - 1`), zero for a single run.
    pub std: f64,
    /// Lower middle for an even number of runs.
    pub median: u64,
    pub min: u64,
    pub max: u64,
    pub censored: usize,
}

/// Censored runs enter the statistics with their budget value.
pub fn summarize(records: &[RunRecord]) -> Result<SettingSummary, HarnessError> {
    let first = records.first().ok_or(HarnessError::NoRecords)?;
    let key = (first.benchmark, first.variant, first.n, first.r);
    if let Some(other) = records
        .iter()
        .find(|rec| (rec.benchmark, rec.variant, rec.n, rec.r) != key)
    {
        return Err(HarnessError::MixedSettings(format!(
            "{}/{}/n={}/r={} vs {}/{}/n={}/r={}",
            first.benchmark, first.variant, first.n, first.r, other.benchmark, other.variant, other.n, other.r
        )));
    }

    let mut values: Vec<u64> = records.iter().map(|rec| rec.coverage_iterations).collect();
    values.sort_unstable();
    let k = values.len();
    let mean = values.iter().map(|&v| v as f64).sum::<f64>() / k as f64;
    let std = if k > 1 {
        let ss: f64 = values.iter().map(|&v| (v as f64 - mean).powi(2)).sum();
        (ss / (k - 1) as f64).sqrt()
    } else {
        0.0
    };
    Ok(SettingSummary {
        benchmark: first.benchmark,
        variant: first.variant,
        n: first.n,
        r: first.r,
        runs: k,
        mean,
        std,
        median: values[(k - 1) / 2],
        min: values[0],
        max: values[k - 1],
        censored: records.iter().filter(|rec| rec.censored).count(),
    })
}
