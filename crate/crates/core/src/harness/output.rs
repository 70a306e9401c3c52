//! CSV and JSONL writers. Headers are fixed; see the constants below.

use std::io::{self, Write};

use serde::Serialize;

use super::fit::ScalingFit;
use super::SettingSummary;
use crate::algorithms::RunRecord;

pub const RUNS_HEADER: &str =
    "benchmark,variant,n,r,run_index,seed,coverage_iterations,evaluations,censored";
pub const SUMMARY_HEADER: &str = "benchmark,variant,n,r,runs,mean,std,median,min,max,censored";
pub const FIT_HEADER: &str = "benchmark,variant,model,c_hat,n,r,mean,ratio";

/// One record paired with its index within its setting.
pub struct IndexedRecord<'a> {
    pub run_index: usize,
    pub record: &'a RunRecord,
}

pub fn write_runs<'a, W: Write>(
    mut out: W,
    records: impl IntoIterator<Item = IndexedRecord<'a>>,
) -> io::Result<()> {
    writeln!(out, "{RUNS_HEADER}")?;
    for IndexedRecord { run_index, record } in records {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            record.benchmark,
            record.variant,
            record.n,
            record.r,
            run_index,
            record.seed,
            record.coverage_iterations,
            record.evaluations,
            record.censored
        )?;
    }
    out.flush()
}

pub fn write_summary<W: Write>(mut out: W, summaries: &[SettingSummary]) -> io::Result<()> {
    writeln!(out, "{SUMMARY_HEADER}")?;
    for s in summaries {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            s.benchmark, s.variant, s.n, s.r, s.runs, s.mean, s.std, s.median, s.min, s.max, s.censored
        )?;
    }
    out.flush()
}

pub fn write_fits<W: Write>(mut out: W, fits: &[ScalingFit]) -> io::Result<()> {
    writeln!(out, "{FIT_HEADER}")?;
    for fit in fits {
        for res in &fit.residuals {
            writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                fit.benchmark, fit.variant, fit.model, fit.c_hat, res.n, res.r, res.mean, res.ratio
            )?;
        }
    }
    out.flush()
}

/// Trace row: setting and run identifiers followed by `iter,pop,dpf,g`;
/// `repl` counts equal-objective replacements so far. Unrecorded fields are
/// omitted.
#[derive(Serialize)]
struct TraceRow<'a> {
    benchmark: &'a str,
    variant: &'a str,
    n: usize,
    r: u32,
    run_index: usize,
    iter: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pop: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dpf: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    g: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    repl: Option<u64>,
}

pub fn write_trace<'a, W: Write>(
    mut out: W,
    records: impl IntoIterator<Item = IndexedRecord<'a>>,
) -> io::Result<()> {
    for IndexedRecord { run_index, record } in records {
        for sample in &record.trace {
            let row = TraceRow {
                benchmark: record.benchmark.as_str(),
                variant: record.variant.as_str(),
                n: record.n,
                r: record.r,
                run_index,
                iter: sample.iteration,
                pop: sample.population_size,
                dpf: sample.d_pf,
                g: sample.g_potential,
                repl: sample.equal_replacements,
            };
            serde_json::to_writer(&mut out, &row)?;
            out.write_all(b"\n")?;
        }
    }
    out.flush()
}
