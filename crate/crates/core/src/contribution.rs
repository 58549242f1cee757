//! Hypervolume-contribution estimators: the R2-HVC indicator, the R2
//! contribution (difference of two R2^HV values) and per-solution Monte
//! Carlo sampling.
//!
//! Every estimator returns exactly 0 for a solution that is weakly dominated
//! by another member of the set or that is not strictly better than the
//! reference point in every objective.

use std::time::Instant;

use rand::Rng;

use crate::error::{HvcError, Result};
use crate::indicators::per_direction_best_two;
use crate::rng::child_stream;
use crate::scalarize::{g_mtch_unchecked, g_star_2tch_unchecked};
use crate::types::{
    DirectionSet, HvcEstimate, Method, ObjectiveVector, Orientation, ReferencePoint, SolutionSet,
};

/// Exponent and directions for [`r2_hvc`].
#[derive(Debug, Clone, PartialEq)]
pub struct R2HvcParams {
    /// 1 averages segment lengths, `m` averages their `m`-th powers.
    pub alpha: u32,
    pub directions: DirectionSet,
}

impl R2HvcParams {
    pub fn new(alpha: u32, directions: DirectionSet) -> Result<Self> {
        let m = directions.dim() as u32;
        if alpha != 1 && alpha != m {
            return Err(HvcError::InvalidArgument(format!(
                "alpha must be 1 or m = {m}, got {alpha}"
            )));
        }
        Ok(R2HvcParams { alpha, directions })
    }

    /// `alpha = m`.
    pub fn with_directions(directions: DirectionSet) -> Self {
        R2HvcParams {
            alpha: directions.dim() as u32,
            directions,
        }
    }
}

fn strictly_inside(s: &[f64], r: &[f64], o: Orientation) -> bool {
    s.iter().zip(r).all(|(&s, &r)| o.strictly_better(s, r))
}

#[inline]
fn segment_kernel(points: &[ObjectiveVector], index: usize, r: &[f64], lambda: &[f64], o: Orientation) -> f64 {
    let s = points[index].as_slice();
    if !strictly_inside(s, r, o) {
        return 0.0;
    }
    let mut length = g_mtch_unchecked(r, lambda, s);
    for (k, a) in points.iter().enumerate() {
        if k != index {
            length = length.min(g_star_2tch_unchecked(a, lambda, s, o));
        }
    }
    length.max(0.0)
}

fn check_segment_args(set: &SolutionSet, index: usize, r: &ReferencePoint, lambda: &[f64]) -> Result<()> {
    set.get(index)?;
    set.check_reference(r)?;
    set.check_dim(lambda.len())
}

/// Length of the ray from solution `index` along `lambda` to the boundary of
/// its exclusive region: the nearer of the attainment surface of the other
/// solutions and the reference-point boundary, clamped at 0.
pub fn segment_length(set: &SolutionSet, index: usize, r: &ReferencePoint, lambda: &[f64]) -> Result<f64> {
    check_segment_args(set, index, r, lambda)?;
    Ok(segment_kernel(set.points(), index, r, lambda, set.orientation()))
}

/// [`segment_length`] computed without the boundary term: the reference
/// boundary is replaced by `m` copies of `s`, the `k`-th with coordinate `k`
/// set to `r_k`, and only the signed 2-Tch distance is used.
pub fn segment_length_via_augmented_points(
    set: &SolutionSet,
    index: usize,
    r: &ReferencePoint,
    lambda: &[f64],
) -> Result<f64> {
    check_segment_args(set, index, r, lambda)?;
    let o = set.orientation();
    let s = set.points()[index].as_slice();
    let augmented = (0..s.len()).map(|k| {
        let mut p = s.to_vec();
        p[k] = r[k];
        p
    });
    let others = set
        .points()
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != index)
        .map(|(_, a)| a.to_vec());
    let length = others
        .chain(augmented)
        .map(|a| g_star_2tch_unchecked(&a, lambda, s, o))
        .fold(f64::INFINITY, f64::min);
    Ok(length.max(0.0))
}

/// Same quantity as [`segment_kernel`] averaged over directions, computed in
/// gain space with reciprocal direction components.
fn r2_hvc_values(set: &SolutionSet, r: &ReferencePoint, directions: &DirectionSet, alpha: i32) -> Vec<f64> {
    let o = set.orientation();
    let m = set.dim();
    let gains: Vec<f64> = set
        .points()
        .iter()
        .flat_map(|p| p.iter().zip(r.iter()).map(move |(&a, &q)| o.gain(a, q)))
        .collect();
    let inverse: Vec<f64> = directions.iter().flatten().map(|l| 1.0 / l).collect();
    let count = directions.len() as f64;
    (0..set.len())
        .map(|i| {
            let s = &gains[i * m..(i + 1) * m];
            if s.iter().any(|&g| g <= 0.0) {
                return 0.0;
            }
            let mut total = 0.0;
            for inv in inverse.chunks_exact(m) {
                let mut length = s
                    .iter()
                    .zip(inv)
                    .map(|(&g, &l)| g * l)
                    .fold(f64::INFINITY, f64::min);
                for (k, a) in gains.chunks_exact(m).enumerate() {
                    if k == i {
                        continue;
                    }
                    let g = s
                        .iter()
                        .zip(a)
                        .zip(inv)
                        .map(|((&sj, &aj), &l)| (sj - aj) * l)
                        .fold(f64::NEG_INFINITY, |g, v| if v > g { v } else { g });
                    length = length.min(g);
                }
                total += length.max(0.0).powi(alpha);
            }
            total / count
        })
        .collect()
}

/// R2-HVC: mean over directions of `segment_length^alpha` for each solution.
pub fn r2_hvc(set: &SolutionSet, r: &ReferencePoint, params: &R2HvcParams) -> Result<HvcEstimate> {
    if set.is_empty() {
        return Err(HvcError::EmptySet);
    }
    set.check_reference(r)?;
    set.check_dim(params.directions.dim())?;
    let start = Instant::now();
    let values = r2_hvc_values(set, r, &params.directions, params.alpha as i32);
    Ok(HvcEstimate {
        method: Method::R2Hvc,
        values,
        budget: params.directions.len(),
        wall_time: start.elapsed(),
        alpha: Some(params.alpha),
    })
}

/// R2 contribution on the R2^HV indicator: `r2_hv(A) - r2_hv(A \ {s})` for
/// every solution, from one best/runner-up pass over the directions.
pub fn r2_contribution(set: &SolutionSet, r: &ReferencePoint, directions: &DirectionSet) -> Result<HvcEstimate> {
    let start = Instant::now();
    let table = per_direction_best_two(set, directions, r)?;
    let values = (0..set.len()).map(|i| table.contribution(i)).collect();
    Ok(HvcEstimate {
        method: Method::R2Contribution,
        values,
        budget: directions.len(),
        wall_time: start.elapsed(),
        alpha: None,
    })
}

/// Monte Carlo estimate of each contribution.
///
/// Solution `s` is sampled uniformly in the box between `r` and `s`; a
/// sample is a hit when no other solution weakly dominates it. The estimate
/// is the hit fraction times the box volume. Solution `i` draws from its own
/// stream seeded by `(seed, i)`.
pub fn monte_carlo_hvc(set: &SolutionSet, r: &ReferencePoint, n_samples: usize, seed: u64) -> Result<HvcEstimate> {
    if n_samples < 1 {
        return Err(HvcError::InvalidArgument("need at least one sample".into()));
    }
    set.check_reference(r)?;
    let start = Instant::now();
    let o = set.orientation();
    let m = set.dim();
    let gains: Vec<Vec<f64>> = set
        .points()
        .iter()
        .map(|p| p.iter().zip(r.iter()).map(|(&a, &q)| o.gain(a, q)).collect())
        .collect();

    let mut values = vec![0.0; set.len()];
    let mut blockers: Vec<f64> = Vec::new();
    let mut sample = vec![0.0; m];
    for (i, box_gain) in gains.iter().enumerate() {
        if box_gain.iter().any(|&g| g <= 0.0) {
            continue;
        }
        // Only solutions at or beyond r in every objective can cover a sample.
        blockers.clear();
        for (k, g) in gains.iter().enumerate() {
            if k != i && g.iter().all(|&x| x >= 0.0) {
                blockers.extend_from_slice(g);
            }
        }
        let mut rng = child_stream(seed, &[i as u64]);
        let mut hits = 0usize;
        for _ in 0..n_samples {
            for (x, &g) in sample.iter_mut().zip(box_gain) {
                *x = rng.random::<f64>() * g;
            }
            let covered = blockers
                .chunks_exact(m)
                .any(|b| b.iter().zip(&sample).all(|(&bj, &xj)| bj >= xj));
            if !covered {
                hits += 1;
            }
        }
        let volume: f64 = box_gain.iter().product();
        values[i] = hits as f64 / n_samples as f64 * volume;
    }
    Ok(HvcEstimate {
        method: Method::MonteCarlo,
        values,
        budget: n_samples,
        wall_time: start.elapsed(),
        alpha: None,
    })
}
