//! Accuracy metrics comparing estimated contributions against exact ones.

use std::cmp::Ordering;

use crate::error::{HvcError, Result};
use crate::types::{argmin, HvcEstimate, Method};

/// Differences at or below this magnitude count as ties.
pub const DEFAULT_TIE_TOLERANCE: f64 = 1e-12;

fn tri_sign(x: f64, tolerance: f64) -> Ordering {
    if x.abs() <= tolerance {
        Ordering::Equal
    } else if x > 0.0 {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

fn check_pair(truth: &HvcEstimate, approx: &HvcEstimate) -> Result<()> {
    if truth.method != Method::Exact {
        return Err(HvcError::InvalidArgument(format!(
            "truth must come from the exact engine, got {}",
            truth.method
        )));
    }
    check_lengths(&truth.values, &approx.values)
}

fn check_lengths(truth: &[f64], approx: &[f64]) -> Result<()> {
    if truth.len() != approx.len() {
        return Err(HvcError::DimensionMismatch {
            expected: truth.len(),
            found: approx.len(),
        });
    }
    Ok(())
}

/// Fraction of solution pairs ordered the same way by both value vectors. A
/// tie (difference within `tie_tolerance`) is consistent only with a tie.
pub fn pairwise_consistency(truth: &[f64], approx: &[f64], tie_tolerance: f64) -> Result<f64> {
    check_lengths(truth, approx)?;
    let n = truth.len();
    if n < 2 {
        return Err(HvcError::TooFewSolutions { needed: 2, found: n });
    }
    let mut consistent = 0usize;
    for i in 0..n {
        for j in i + 1..n {
            if tri_sign(truth[i] - truth[j], tie_tolerance)
                == tri_sign(approx[i] - approx[j], tie_tolerance)
            {
                consistent += 1;
            }
        }
    }
    Ok(consistent as f64 / (n * (n - 1) / 2) as f64)
}

pub fn consistency_rate(truth: &HvcEstimate, approx: &HvcEstimate) -> Result<f64> {
    check_pair(truth, approx)?;
    pairwise_consistency(&truth.values, &approx.values, DEFAULT_TIE_TOLERANCE)
}

/// True when both value vectors pick the same smallest entry (lowest index
/// on ties).
pub fn same_argmin(truth: &[f64], approx: &[f64]) -> Result<bool> {
    check_lengths(truth, approx)?;
    if truth.is_empty() {
        return Err(HvcError::EmptySet);
    }
    Ok(argmin(truth) == argmin(approx))
}

pub fn correct_identification(truth: &HvcEstimate, approx: &HvcEstimate) -> Result<bool> {
    check_pair(truth, approx)?;
    same_argmin(&truth.values, &approx.values)
}

/// Share of solution sets whose smallest contributor was identified.
pub fn identification_rate(results: &[(HvcEstimate, HvcEstimate)]) -> Result<f64> {
    if results.is_empty() {
        return Err(HvcError::InvalidArgument("no solution sets to rate".into()));
    }
    let mut correct = 0usize;
    for (truth, approx) in results {
        if correct_identification(truth, approx)? {
            correct += 1;
        }
    }
    Ok(correct as f64 / results.len() as f64)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunSummary {
    pub mean: f64,
    /// Sample standard deviation; 0 when there is a single run.
    pub stddev: f64,
    pub n_runs: usize,
}

impl RunSummary {
    pub fn single_run(&self) -> bool {
        self.n_runs == 1
    }
}

/// Mean and `(n - 1)`-denominator standard deviation over independent runs.
pub fn aggregate_runs(per_run: &[f64], n_runs: usize) -> Result<RunSummary> {
    if n_runs < 1 || per_run.len() != n_runs {
        return Err(HvcError::InvalidArgument(format!(
            "expected {n_runs} run values, got {}",
            per_run.len()
        )));
    }
    let n = n_runs as f64;
    let mean = per_run.iter().sum::<f64>() / n;
    let stddev = if n_runs == 1 {
        0.0
    } else {
        (per_run.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
    };
    Ok(RunSummary {
        mean,
        stddev,
        n_runs,
    })
}
