//! `bench`: sequential timing of each method over whole suites.

use std::path::Path;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::config::ExperimentConfig;
use crate::error::{CliError, Result};
use crate::experiment::{check_exact_guard, load_suite, timed_estimate};
use crate::layout::{self, suites, BENCH_FILE};

pub const BENCH_COLUMNS: [&str; 13] = [
    "shape",
    "m",
    "N",
    "r",
    "method",
    "budget",
    "alpha",
    "n_sets",
    "n_repeats",
    "median_total_s",
    "min_total_s",
    "max_total_s",
    "value_sum",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub shape: String,
    pub m: usize,
    #[serde(rename = "N")]
    pub n: usize,
    pub r: f64,
    pub method: String,
    pub budget: usize,
    pub alpha: Option<u32>,
    pub n_sets: usize,
    pub n_repeats: usize,
    pub median_total_s: f64,
    pub min_total_s: f64,
    pub max_total_s: f64,
    /// Sum of every estimated value in the first repeat; fixed for a fixed seed.
    pub value_sum: f64,
}

impl BenchRow {
    /// Method name with the alpha = 1 variant of r2hvc marked.
    pub fn label(&self) -> String {
        match self.alpha {
            Some(a) if a as usize != self.m => format!("{}-a{a}", self.method),
            _ => self.method.clone(),
        }
    }
}

fn median(sorted: &[f64]) -> f64 {
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
    }
}

/// Times every (suite, r, method) cell `n_runs` times. Repeats are
/// interleaved across methods so slow drift hits all of them alike. Repeat
/// `k` uses the same seeds as run `k` of `hvc run`.
pub fn bench(config: &ExperimentConfig) -> Result<Vec<BenchRow>> {
    config.validate()?;
    check_exact_guard(config)?;
    let mut rows = Vec::new();
    for suite in suites(config) {
        let sets = load_suite(config, suite)?;
        for &r in &config.ref_scalars {
            let mut totals = vec![Vec::with_capacity(config.n_runs); config.methods.len()];
            let mut sums = vec![0.0; config.methods.len()];
            for repeat in 0..config.n_runs {
                for (k, spec) in config.methods.iter().enumerate() {
                    let mut total = Duration::ZERO;
                    for (i, set) in sets.iter().enumerate() {
                        let (estimate, wall) = timed_estimate(config, suite, i, set, r, spec, repeat)?;
                        total += wall;
                        if repeat == 0 {
                            sums[k] += estimate.values.iter().sum::<f64>();
                        }
                    }
                    totals[k].push(total.as_secs_f64());
                }
            }
            for (k, spec) in config.methods.iter().enumerate() {
                let t = &mut totals[k];
                t.sort_by(f64::total_cmp);
                rows.push(BenchRow {
                    shape: suite.shape.name().to_owned(),
                    m: suite.m,
                    n: suite.n,
                    r,
                    method: spec.name.name().to_owned(),
                    budget: spec.budget(),
                    alpha: spec.alpha_for(suite.m),
                    n_sets: sets.len(),
                    n_repeats: config.n_runs,
                    median_total_s: median(t),
                    min_total_s: t[0],
                    max_total_s: t[t.len() - 1],
                    value_sum: sums[k],
                });
            }
        }
    }
    let path = config.output_dir.join(BENCH_FILE);
    let mut w = layout::csv_writer(&path)?;
    for row in &rows {
        w.serialize(row)?;
    }
    layout::flush(w, &path)?;
    Ok(rows)
}

pub fn read_bench(path: &Path) -> Result<Vec<BenchRow>> {
    let mut reader = layout::csv_reader(path, &BENCH_COLUMNS, "run `hvc bench` first")?;
    reader
        .deserialize()
        .collect::<std::result::Result<Vec<BenchRow>, _>>()
        .map_err(|e| CliError::BadInput(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn medians() {
        assert_eq!(median(&[1.0]), 1.0);
        assert_eq!(median(&[1.0, 2.0, 9.0]), 2.0);
        assert_eq!(median(&[1.0, 2.0, 4.0, 9.0]), 3.0);
    }
}
