//! Tchebycheff-type scalarizing functions.
//!
//! Each function measures a ray length along a direction `lambda` whose
//! components are assumed strictly positive (the direction sampler clamps
//! them). The checked entry points validate dimensions; the `*_unchecked`
//! kernels are used by the estimators' inner loops.

use crate::error::{HvcError, Result};
use crate::types::Orientation;

fn check(expected: usize, others: &[usize]) -> Result<()> {
    match others.iter().find(|&&d| d != expected) {
        Some(&found) => Err(HvcError::DimensionMismatch { expected, found }),
        None => Ok(()),
    }
}

/// `max_j |r*_j - a_j| / lambda_j`: distance from the utopian point along
/// `lambda` to the contour through `a`.
pub fn g_2tch(a: &[f64], lambda: &[f64], r_star: &[f64]) -> Result<f64> {
    check(a.len(), &[lambda.len(), r_star.len()])?;
    Ok(g_2tch_unchecked(a, lambda, r_star))
}

#[inline]
pub(crate) fn g_2tch_unchecked(a: &[f64], lambda: &[f64], r_star: &[f64]) -> f64 {
    a.iter()
        .zip(lambda)
        .zip(r_star)
        .map(|((&a, &l), &r)| (r - a).abs() / l)
        .fold(f64::NEG_INFINITY, f64::max)
}

/// `min_j |origin_j - p_j| / lambda_j`.
///
/// With `origin` the reference point this is the ray length from the
/// reference to the attainment surface of `p`; with `origin` a solution `s`
/// and `p` the reference point it is the length from `s` to the
/// reference-point boundary.
pub fn g_mtch(p: &[f64], lambda: &[f64], origin: &[f64]) -> Result<f64> {
    check(p.len(), &[lambda.len(), origin.len()])?;
    Ok(g_mtch_unchecked(p, lambda, origin))
}

#[inline]
pub(crate) fn g_mtch_unchecked(p: &[f64], lambda: &[f64], origin: &[f64]) -> f64 {
    p.iter()
        .zip(lambda)
        .zip(origin)
        .map(|((&p, &l), &o)| (o - p).abs() / l)
        .fold(f64::INFINITY, f64::min)
}

/// Signed 2-Tch distance from solution `s` to the contour of `a`.
///
/// Maximize: `max_j (s_j - a_j) / lambda_j`; Minimize: `max_j (a_j - s_j) /
/// lambda_j`. There is no absolute value, so the result is negative when `a`
/// dominates `s`. Callers clamp.
pub fn g_star_2tch(a: &[f64], lambda: &[f64], s: &[f64], o: Orientation) -> Result<f64> {
    check(a.len(), &[lambda.len(), s.len()])?;
    Ok(g_star_2tch_unchecked(a, lambda, s, o))
}

#[inline]
pub(crate) fn g_star_2tch_unchecked(a: &[f64], lambda: &[f64], s: &[f64], o: Orientation) -> f64 {
    a.iter()
        .zip(lambda)
        .zip(s)
        .map(|((&a, &l), &s)| o.gain(s, a) / l)
        .fold(f64::NEG_INFINITY, f64::max)
}
