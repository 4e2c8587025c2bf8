//! Batch experiments: solve many generated instances, check each one and,
//! when small enough, compare against the oracle.

use std::io::Write;
use std::time::Instant;

use critical_match::engine::solve;
use critical_match::gen::{mix, random_instance, GenParams};
use critical_match::oracle::{max_critical_rsm, MAX_SIDE};
use critical_match::verify::report_leveled;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone)]
pub struct BenchConfig {
    /// `params.seed` is the master seed; each instance gets its own.
    pub params: GenParams,
    pub count: usize,
    pub oracle_max: usize,
    pub timing: bool,
}

/// One CSV row. Optional columns are left empty when not computed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRow {
    pub seed: u64,
    pub n_a: usize,
    pub n_b: usize,
    pub s: usize,
    pub t: usize,
    pub solver_size: usize,
    pub oracle_max_size: Option<usize>,
    /// `solver_size / oracle_max_size` in lowest terms, e.g. `"3/4"`.
    pub ratio: Option<String>,
    pub is_rsm: bool,
    pub is_critical: bool,
    pub structure_ok: bool,
    pub proposal_count: u64,
    pub blocking_pairs: usize,
    pub elapsed_ms: Option<f64>,
}

impl ExperimentRow {
    pub const HEADER: [&'static str; 14] = [
        "seed",
        "n_a",
        "n_b",
        "s",
        "t",
        "solver_size",
        "oracle_max_size",
        "ratio",
        "is_rsm",
        "is_critical",
        "structure_ok",
        "proposal_count",
        "blocking_pairs",
        "elapsed_ms",
    ];

    /// Describes the first guaranteed property this row breaks, if any.
    pub fn breach(&self) -> Option<&'static str> {
        if !self.is_rsm {
            Some("output is not relaxed stable")
        } else if !self.is_critical {
            Some("output is not critical")
        } else if !self.structure_ok {
            Some("level structure violated")
        } else if self
            .oracle_max_size
            .is_some_and(|opt| 3 * self.solver_size < 2 * opt)
        {
            Some("output is below two thirds of the optimum")
        } else {
            None
        }
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `p/q` in lowest terms; `0/0` reads as `1/1`.
pub fn ratio(p: usize, q: usize) -> String {
    match gcd(p, q) {
        0 => "1/1".to_string(),
        g => format!("{}/{}", p / g, q / g),
    }
}

/// Seed of the `i`-th instance of a batch.
pub fn instance_seed(master: u64, i: usize) -> u64 {
    mix(mix(master).wrapping_add(i as u64))
}

pub fn experiment(
    params: &GenParams,
    oracle_max: usize,
    timing: bool,
) -> Result<ExperimentRow, CliError> {
    let inst = random_instance(params)?;
    let start = Instant::now();
    let solution = solve(&inst)?;
    let elapsed = start.elapsed();
    let r = report_leveled(&inst, &solution.matching)?;
    let solver_size = solution.matching.len();
    let optimum = if inst.n_a() <= oracle_max && inst.n_b() <= oracle_max {
        Some(max_critical_rsm(&inst)?.max_critical_rsm_size)
    } else {
        None
    };
    Ok(ExperimentRow {
        seed: params.seed,
        n_a: inst.n_a(),
        n_b: inst.n_b(),
        s: inst.s(),
        t: inst.t(),
        solver_size,
        oracle_max_size: optimum,
        ratio: optimum.map(|opt| ratio(solver_size, opt)),
        is_rsm: r.is_rsm,
        is_critical: r.is_critical,
        structure_ok: r.structure_report.as_ref().is_some_and(|s| s.is_empty()),
        proposal_count: solution.stats.proposal_count,
        blocking_pairs: r.blocking_pairs.len(),
        elapsed_ms: timing.then(|| (elapsed.as_secs_f64() * 1e6).round() / 1e3),
    })
}

/// Runs the batch in parallel; rows come back in instance order.
pub fn cmd_bench(config: &BenchConfig) -> Result<Vec<ExperimentRow>, CliError> {
    if config.oracle_max > MAX_SIDE {
        return Err(CliError::OracleLimit(config.oracle_max));
    }
    config.params.validate()?;
    (0..config.count)
        .into_par_iter()
        .map(|i| {
            let params = GenParams {
                seed: instance_seed(config.params.seed, i),
                ..config.params.clone()
            };
            experiment(&params, config.oracle_max, config.timing)
        })
        .collect()
}

/// Writes the header and then every row, so an empty batch still has a
/// header line.
pub fn write_csv<W: Write>(rows: &[ExperimentRow], out: W) -> Result<(), CliError> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(out);
    w.write_record(ExperimentRow::HEADER)?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}
