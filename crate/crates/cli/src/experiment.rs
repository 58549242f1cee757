//! `gen` and `run`: write the benchmark suites, then evaluate every method
//! on every set.

use std::time::{Duration, Instant};

use hvc_core::generate::suite_member_seed;
use hvc_core::io::{load_set, save_set, SetSidecar};
use hvc_core::{
    hvc_exact, make_benchmark_suite, monte_carlo_hvc, r2_contribution, r2_hvc, reference_point,
    sample_directions, HvcEstimate, Method, Orientation, R2HvcParams, SolutionSet, MAX_EXACT_DIM,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{ExperimentConfig, MethodSpec};
use crate::error::{CliError, Result};
use crate::layout::{self, set_stem, suites, Suite, RESULTS_FILE, VALUES_FILE};

/// Writes every suite; returns the number of set CSVs written.
pub fn gen(config: &ExperimentConfig) -> Result<usize> {
    config.validate()?;
    let mut written = 0;
    for suite in suites(config) {
        let seed = suite.set_seed(config.seed);
        let sets = make_benchmark_suite(suite.shape, suite.m, suite.n, config.n_sets, seed)?;
        let dir = suite.dir(&config.output_dir);
        layout::create_dir(&dir)?;
        for (i, set) in sets.iter().enumerate() {
            let sidecar = SetSidecar {
                shape: suite.shape,
                m: suite.m,
                n: suite.n,
                seed: suite_member_seed(seed, i),
                orientation: Orientation::Maximize,
            };
            save_set(&dir, &set_stem(i), set, &sidecar)?;
            written += 1;
        }
    }
    Ok(written)
}

/// Loads the `n_sets` sets of one suite, failing with exit 3 on a missing file.
pub fn load_suite(config: &ExperimentConfig, suite: Suite) -> Result<Vec<SolutionSet>> {
    let dir = suite.dir(&config.output_dir);
    (0..config.n_sets)
        .map(|i| {
            let stem = set_stem(i);
            let csv = dir.join(format!("{stem}.csv"));
            if !csv.is_file() || !dir.join(format!("{stem}.json")).is_file() {
                return Err(CliError::MissingSet { path: csv });
            }
            let (set, sidecar) = load_set(&dir, &stem)?;
            if sidecar.shape != suite.shape || sidecar.m != suite.m || sidecar.n != suite.n {
                return Err(CliError::BadInput(format!(
                    "{} does not belong to suite {} m={} N={}",
                    csv.display(),
                    suite.shape,
                    suite.m,
                    suite.n
                )));
            }
            Ok(set)
        })
        .collect()
}

pub fn check_exact_guard(config: &ExperimentConfig) -> Result<()> {
    if config.has_exact() {
        if let Some(&m) = config.dims.iter().find(|&&m| m > MAX_EXACT_DIM) {
            return Err(CliError::DimensionGuard {
                m,
                guard: MAX_EXACT_DIM,
            });
        }
    }
    Ok(())
}

/// Runs one method on one set. The clock covers direction sampling and the
/// estimator call.
pub fn timed_estimate(
    config: &ExperimentConfig,
    suite: Suite,
    set_index: usize,
    set: &SolutionSet,
    r: f64,
    spec: &MethodSpec,
    run: usize,
) -> Result<(HvcEstimate, Duration)> {
    let reference = reference_point(suite.m, r)?;
    let budget = spec.budget();
    let start = Instant::now();
    let estimate = match spec.name {
        Method::R2Hvc => {
            let seed = suite.direction_seed(config.seed, set_index, run, budget);
            let directions = sample_directions(suite.m, budget, seed)?;
            let alpha = spec.alpha_for(suite.m).expect("r2hvc has alpha");
            r2_hvc(set, &reference, &R2HvcParams::new(alpha, directions)?)?
        }
        Method::R2Contribution => {
            let seed = suite.direction_seed(config.seed, set_index, run, budget);
            r2_contribution(set, &reference, &sample_directions(suite.m, budget, seed)?)?
        }
        Method::MonteCarlo => {
            let seed = suite.sample_seed(config.seed, set_index, run, budget);
            monte_carlo_hvc(set, &reference, budget, seed)?
        }
        Method::Exact => hvc_exact(set, &reference)?,
    };
    Ok((estimate, start.elapsed()))
}

#[derive(Debug, Serialize)]
struct ResultRow<'a> {
    set_id: usize,
    shape: &'a str,
    m: usize,
    #[serde(rename = "N")]
    n: usize,
    r: f64,
    method: &'a str,
    budget: usize,
    alpha: Option<u32>,
    run: usize,
    wall_time_s: f64,
}

#[derive(Debug, Serialize)]
struct ValueRow<'a> {
    set_id: usize,
    shape: &'a str,
    m: usize,
    #[serde(rename = "N")]
    n: usize,
    r: f64,
    method: &'a str,
    budget: usize,
    alpha: Option<u32>,
    run: usize,
    index: usize,
    value: f64,
}

pub const RESULTS_COLUMNS: [&str; 10] =
    ["set_id", "shape", "m", "N", "r", "method", "budget", "alpha", "run", "wall_time_s"];
pub const VALUES_COLUMNS: [&str; 11] = [
    "set_id", "shape", "m", "N", "r", "method", "budget", "alpha", "run", "index", "value",
];

struct Row {
    r: f64,
    spec: MethodSpec,
    run: usize,
    estimate: HvcEstimate,
    wall_time: Duration,
}

/// All rows for one set, in (r, run, method) order. The exact engine runs
/// once per reference point; its row is repeated in every run.
fn evaluate_set(config: &ExperimentConfig, suite: Suite, index: usize, set: &SolutionSet) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    for &r in &config.ref_scalars {
        let mut exact: Option<(HvcEstimate, Duration)> = None;
        for run in 0..config.n_runs {
            for spec in &config.methods {
                let (estimate, wall_time) = match (spec.name, &exact) {
                    (Method::Exact, Some(cached)) => cached.clone(),
                    (Method::Exact, None) => {
                        let fresh = timed_estimate(config, suite, index, set, r, spec, run)?;
                        exact = Some(fresh.clone());
                        fresh
                    }
                    _ => timed_estimate(config, suite, index, set, r, spec, run)?,
                };
                rows.push(Row {
                    r,
                    spec: *spec,
                    run,
                    estimate,
                    wall_time,
                });
            }
        }
    }
    Ok(rows)
}

/// Number of rows written to results.csv.
pub fn run(config: &ExperimentConfig) -> Result<usize> {
    config.validate()?;
    check_exact_guard(config)?;
    let loaded: Vec<(Suite, Vec<SolutionSet>)> = suites(config)
        .into_iter()
        .map(|suite| Ok((suite, load_suite(config, suite)?)))
        .collect::<Result<_>>()?;
    let tasks: Vec<(Suite, usize, &SolutionSet)> = loaded
        .iter()
        .flat_map(|(suite, sets)| sets.iter().enumerate().map(move |(i, set)| (*suite, i, set)))
        .collect();
    let per_set: Vec<Vec<Row>> = tasks
        .par_iter()
        .map(|&(suite, i, set)| evaluate_set(config, suite, i, set))
        .collect::<Result<_>>()?;

    let out = &config.output_dir;
    let results_path = out.join(RESULTS_FILE);
    let values_path = out.join(VALUES_FILE);
    let mut results = layout::csv_writer(&results_path)?;
    let mut values = layout::csv_writer(&values_path)?;
    let mut count = 0;
    for (&(suite, set_id, _), rows) in tasks.iter().zip(&per_set) {
        for row in rows {
            let label = row.spec.name.name();
            let alpha = row.spec.alpha_for(suite.m);
            results.serialize(ResultRow {
                set_id,
                shape: suite.shape.name(),
                m: suite.m,
                n: suite.n,
                r: row.r,
                method: label,
                budget: row.spec.budget(),
                alpha,
                run: row.run,
                wall_time_s: row.wall_time.as_secs_f64(),
            })?;
            for (index, &value) in row.estimate.values.iter().enumerate() {
                values.serialize(ValueRow {
                    set_id,
                    shape: suite.shape.name(),
                    m: suite.m,
                    n: suite.n,
                    r: row.r,
                    method: label,
                    budget: row.spec.budget(),
                    alpha,
                    run: row.run,
                    index,
                    value,
                })?;
            }
            count += 1;
        }
    }
    layout::flush(results, &results_path)?;
    layout::flush(values, &values_path)?;
    Ok(count)
}
