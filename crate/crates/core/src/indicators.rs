//! Whole-set R2 indicators.
//!
//! All sums over directions run sequentially in index order so results are
//! bit-reproducible for a fixed [`DirectionSet`].

use crate::error::{HvcError, Result};
use crate::scalarize::{g_2tch_unchecked, g_mtch_unchecked};
use crate::types::{DirectionSet, Orientation, ReferencePoint, SolutionSet};

fn check_inputs(set: &SolutionSet, directions: &DirectionSet, r: &ReferencePoint) -> Result<()> {
    if set.is_empty() {
        return Err(HvcError::EmptySet);
    }
    set.check_reference(r)?;
    set.check_dim(directions.dim())
}

/// Ray length from `r` along `lambda` to the boundary of the box dominated
/// by `a`. Zero when `a` is not strictly better than `r` everywhere, since
/// that box is degenerate.
#[inline]
pub(crate) fn reference_length(a: &[f64], lambda: &[f64], r: &[f64], o: Orientation) -> f64 {
    if a.iter().zip(r).all(|(&a, &r)| o.strictly_better(a, r)) {
        g_mtch_unchecked(a, lambda, r)
    } else {
        0.0
    }
}

/// R2 indicator on the 2-Tch function: mean over directions of the shortest
/// 2-Tch distance from the utopian point `r_star` to the set.
pub fn r2_2tch(set: &SolutionSet, directions: &DirectionSet, r_star: &ReferencePoint) -> Result<f64> {
    check_inputs(set, directions, r_star)?;
    let mut total = 0.0;
    for lambda in directions.iter() {
        total += set
            .points()
            .iter()
            .map(|a| g_2tch_unchecked(a, lambda, r_star))
            .fold(f64::INFINITY, f64::min);
    }
    Ok(total / directions.len() as f64)
}

fn longest_reach(set: &SolutionSet, lambda: &[f64], r: &[f64]) -> f64 {
    let o = set.orientation();
    set.points()
        .iter()
        .map(|a| reference_length(a, lambda, r, o))
        .fold(0.0, f64::max)
}

/// Mean over directions of the longest reference-to-attainment-surface ray.
pub fn r2_mtch(set: &SolutionSet, directions: &DirectionSet, r: &ReferencePoint) -> Result<f64> {
    check_inputs(set, directions, r)?;
    let mut total = 0.0;
    for lambda in directions.iter() {
        total += longest_reach(set, lambda, r);
    }
    Ok(total / directions.len() as f64)
}

/// Like [`r2_mtch`] with each ray length raised to the power `m`.
pub fn r2_hv(set: &SolutionSet, directions: &DirectionSet, r: &ReferencePoint) -> Result<f64> {
    check_inputs(set, directions, r)?;
    let m = set.dim() as i32;
    let mut total = 0.0;
    for lambda in directions.iter() {
        total += longest_reach(set, lambda, r).powi(m);
    }
    Ok(total / directions.len() as f64)
}

/// Per-direction best and runner-up ray lengths of a set.
///
/// Removing solution `i` only changes the per-direction maximum where
/// `best_index == i`, in which case the runner-up applies.
#[derive(Debug, Clone, PartialEq)]
pub struct BestTwo {
    pub best: Vec<f64>,
    pub best_index: Vec<usize>,
    pub second: Vec<f64>,
    dim: usize,
}

impl BestTwo {
    pub fn len(&self) -> usize {
        self.best.len()
    }

    pub fn is_empty(&self) -> bool {
        self.best.is_empty()
    }

    /// [`r2_hv`] of the full set, reconstructed from the table.
    pub fn r2_hv(&self) -> f64 {
        let m = self.dim as i32;
        let total: f64 = self.best.iter().fold(0.0, |acc, b| acc + b.powi(m));
        total / self.len() as f64
    }

    /// [`r2_hv`] of the set without solution `index`. Terms are accumulated
    /// in the same order as a direct evaluation, so the two agree exactly.
    pub fn r2_hv_without(&self, index: usize) -> f64 {
        let m = self.dim as i32;
        let mut total = 0.0;
        for k in 0..self.len() {
            let v = if self.best_index[k] == index {
                self.second[k]
            } else {
                self.best[k]
            };
            total += v.powi(m);
        }
        total / self.len() as f64
    }

    /// `r2_hv(A) - r2_hv(A \ {index})`, summing only the directions where
    /// `index` is the maximizer.
    pub fn contribution(&self, index: usize) -> f64 {
        let m = self.dim as i32;
        let mut total = 0.0;
        for k in 0..self.len() {
            if self.best_index[k] == index {
                total += self.best[k].powi(m) - self.second[k].powi(m);
            }
        }
        (total / self.len() as f64).max(0.0)
    }
}

pub fn per_direction_best_two(
    set: &SolutionSet,
    directions: &DirectionSet,
    r: &ReferencePoint,
) -> Result<BestTwo> {
    if set.len() < 2 {
        return Err(HvcError::TooFewSolutions {
            needed: 2,
            found: set.len(),
        });
    }
    check_inputs(set, directions, r)?;
    let o = set.orientation();
    let n = directions.len();
    let mut table = BestTwo {
        best: Vec::with_capacity(n),
        best_index: Vec::with_capacity(n),
        second: Vec::with_capacity(n),
        dim: set.dim(),
    };
    for lambda in directions.iter() {
        let (mut best, mut second, mut idx) = (f64::NEG_INFINITY, f64::NEG_INFINITY, 0);
        for (i, a) in set.points().iter().enumerate() {
            let v = reference_length(a, lambda, r, o);
            if v > best {
                second = best;
                best = v;
                idx = i;
            } else if v > second {
                second = v;
            }
        }
        table.best.push(best);
        table.best_index.push(idx);
        table.second.push(second);
    }
    Ok(table)
}
