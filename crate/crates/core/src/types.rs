//! Domain types shared by every estimator.
//!
//! All types are immutable once built. Solutions are identified by their
//! position in a [`SolutionSet`]; estimates and metrics align by index.

use std::fmt;
use std::ops::Deref;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::error::{HvcError, Result};

/// Lower bound applied to every direction-vector component.
pub const DIRECTION_EPSILON: f64 = 1e-12;

/// Tolerance on the unit norm of stored direction vectors.
pub const NORM_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Maximize,
    Minimize,
}

impl Orientation {
    /// Signed distance of `value` beyond `reference` in the improving
    /// direction. Positive means `value` is better than `reference`.
    #[inline]
    pub fn gain(self, value: f64, reference: f64) -> f64 {
        match self {
            Orientation::Maximize => value - reference,
            Orientation::Minimize => reference - value,
        }
    }

    #[inline]
    pub fn at_least_as_good(self, a: f64, b: f64) -> bool {
        match self {
            Orientation::Maximize => a >= b,
            Orientation::Minimize => a <= b,
        }
    }

    #[inline]
    pub fn strictly_better(self, a: f64, b: f64) -> bool {
        match self {
            Orientation::Maximize => a > b,
            Orientation::Minimize => a < b,
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Orientation::Maximize => f.write_str("maximize"),
            Orientation::Minimize => f.write_str("minimize"),
        }
    }
}

fn check_finite(values: &[f64]) -> Result<()> {
    if values.is_empty() {
        return Err(HvcError::EmptyVector);
    }
    match values.iter().position(|v| !v.is_finite()) {
        Some(j) => Err(HvcError::NonFinite(j)),
        None => Ok(()),
    }
}

/// A point in objective space.
///
/// One-objective vectors are accepted so degenerate cases of the indicators
/// can be exercised; the benchmark generators always produce `m >= 2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct ObjectiveVector(Vec<f64>);

impl ObjectiveVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        check_finite(&values)?;
        Ok(ObjectiveVector(values))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl Deref for ObjectiveVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl TryFrom<Vec<f64>> for ObjectiveVector {
    type Error = HvcError;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        ObjectiveVector::new(values)
    }
}

impl From<ObjectiveVector> for Vec<f64> {
    fn from(v: ObjectiveVector) -> Self {
        v.0
    }
}

/// Reference point bounding the dominated region. Also used for the
/// utopian point of the 2-Tch indicator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct ReferencePoint(Vec<f64>);

impl ReferencePoint {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        check_finite(&values)?;
        Ok(ReferencePoint(values))
    }

    /// `(value, ..., value)` with `m` components.
    pub fn uniform(m: usize, value: f64) -> Result<Self> {
        ReferencePoint::new(vec![value; m])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

impl Deref for ReferencePoint {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl TryFrom<Vec<f64>> for ReferencePoint {
    type Error = HvcError;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        ReferencePoint::new(values)
    }
}

impl From<ReferencePoint> for Vec<f64> {
    fn from(v: ReferencePoint) -> Self {
        v.0
    }
}

/// Ordered collection of objective vectors sharing one orientation.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionSet {
    orientation: Orientation,
    dim: usize,
    points: Vec<ObjectiveVector>,
}

impl SolutionSet {
    pub fn new(orientation: Orientation, points: Vec<ObjectiveVector>) -> Result<Self> {
        let dim = points.first().map(|p| p.dim()).ok_or(HvcError::EmptySet)?;
        Self::with_dim(orientation, dim, points)
    }

    /// Builds a set of known dimension; `points` may be empty.
    pub fn with_dim(
        orientation: Orientation,
        dim: usize,
        points: Vec<ObjectiveVector>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(HvcError::EmptyVector);
        }
        if let Some(p) = points.iter().find(|p| p.dim() != dim) {
            return Err(HvcError::DimensionMismatch {
                expected: dim,
                found: p.dim(),
            });
        }
        Ok(SolutionSet {
            orientation,
            dim,
            points,
        })
    }

    pub fn from_rows(orientation: Orientation, rows: Vec<Vec<f64>>) -> Result<Self> {
        let points = rows
            .into_iter()
            .map(ObjectiveVector::new)
            .collect::<Result<Vec<_>>>()?;
        Self::new(orientation, points)
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[ObjectiveVector] {
        &self.points
    }

    pub fn get(&self, index: usize) -> Result<&ObjectiveVector> {
        self.points.get(index).ok_or(HvcError::IndexOutOfRange {
            index,
            len: self.points.len(),
        })
    }

    /// Copy of the set with solution `index` removed.
    pub fn without(&self, index: usize) -> Result<SolutionSet> {
        self.get(index)?;
        let mut points = self.points.clone();
        points.remove(index);
        Ok(SolutionSet {
            orientation: self.orientation,
            dim: self.dim,
            points,
        })
    }

    /// Copy of the set with `point` appended.
    pub fn with_point(&self, point: ObjectiveVector) -> Result<SolutionSet> {
        self.check_dim(point.dim())?;
        let mut points = self.points.clone();
        points.push(point);
        Ok(SolutionSet {
            orientation: self.orientation,
            dim: self.dim,
            points,
        })
    }

    pub fn check_reference(&self, r: &ReferencePoint) -> Result<()> {
        self.check_dim(r.dim())
    }

    pub(crate) fn check_dim(&self, found: usize) -> Result<()> {
        if found == self.dim {
            Ok(())
        } else {
            Err(HvcError::DimensionMismatch {
                expected: self.dim,
                found,
            })
        }
    }

    /// True if `point` is strictly better than `r` in every objective.
    pub fn strictly_inside(&self, point: &[f64], r: &[f64]) -> bool {
        point
            .iter()
            .zip(r)
            .all(|(&p, &q)| self.orientation.strictly_better(p, q))
    }
}

/// Unit-norm direction vectors with strictly positive components, stored
/// contiguously.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectionSet {
    dim: usize,
    data: Vec<f64>,
    seed: u64,
}

impl DirectionSet {
    /// Wraps already-normalized vectors, checking the norm and positivity
    /// invariants.
    pub fn new(vectors: Vec<Vec<f64>>, seed: u64) -> Result<Self> {
        let dim = vectors.first().map(Vec::len).ok_or_else(|| {
            HvcError::InvalidArgument("direction set needs at least one vector".into())
        })?;
        if dim == 0 {
            return Err(HvcError::EmptyVector);
        }
        let mut data = Vec::with_capacity(dim * vectors.len());
        for v in &vectors {
            if v.len() != dim {
                return Err(HvcError::DimensionMismatch {
                    expected: dim,
                    found: v.len(),
                });
            }
            check_finite(v)?;
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if (norm - 1.0).abs() > NORM_TOLERANCE {
                return Err(HvcError::InvalidArgument(format!(
                    "direction {v:?} has norm {norm}, expected 1"
                )));
            }
            if v.iter().any(|&x| x < DIRECTION_EPSILON) {
                return Err(HvcError::InvalidArgument(format!(
                    "direction {v:?} has a component below {DIRECTION_EPSILON}"
                )));
            }
            data.extend_from_slice(v);
        }
        Ok(DirectionSet { dim, data, seed })
    }

    /// Takes absolute values, clamps each component to at least
    /// [`DIRECTION_EPSILON`] and rescales to unit norm.
    pub fn from_unnormalized(vectors: Vec<Vec<f64>>, seed: u64) -> Result<Self> {
        let normalized = vectors
            .into_iter()
            .map(|v| normalize_direction(&v))
            .collect::<Result<Vec<_>>>()?;
        Self::new(normalized, seed)
    }

    pub(crate) fn from_flat(dim: usize, data: Vec<f64>, seed: u64) -> Self {
        debug_assert!(dim > 0 && data.len() % dim == 0);
        DirectionSet { dim, data, seed }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.data.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn iter(&self) -> std::slice::ChunksExact<'_, f64> {
        self.data.chunks_exact(self.dim)
    }

    pub fn get(&self, k: usize) -> Option<&[f64]> {
        self.data.get(k * self.dim..(k + 1) * self.dim)
    }
}

/// `|x| / ||x||`, clamped below at [`DIRECTION_EPSILON`] and renormalized.
pub fn normalize_direction(x: &[f64]) -> Result<Vec<f64>> {
    check_finite(x)?;
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Err(HvcError::InvalidArgument("zero direction vector".into()));
    }
    let mut v: Vec<f64> = x
        .iter()
        .map(|c| (c.abs() / norm).max(DIRECTION_EPSILON))
        .collect();
    let renorm = v.iter().map(|c| c * c).sum::<f64>().sqrt();
    for c in &mut v {
        *c /= renorm;
    }
    Ok(v)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "r2hvc")]
    R2Hvc,
    #[serde(rename = "r2contrib")]
    R2Contribution,
    #[serde(rename = "montecarlo")]
    MonteCarlo,
    #[serde(rename = "exact")]
    Exact,
}

impl Method {
    pub const ALL: [Method; 4] = [
        Method::R2Hvc,
        Method::R2Contribution,
        Method::MonteCarlo,
        Method::Exact,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::R2Hvc => "r2hvc",
            Method::R2Contribution => "r2contrib",
            Method::MonteCarlo => "montecarlo",
            Method::Exact => "exact",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Method {
    type Err = HvcError;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| HvcError::InvalidArgument(format!("unknown method {s:?}")))
    }
}

/// Per-solution contribution values produced by one estimator run.
#[derive(Debug, Clone, PartialEq)]
pub struct HvcEstimate {
    pub method: Method,
    pub values: Vec<f64>,
    /// Direction count or sample count; 0 for the exact engine.
    pub budget: usize,
    pub wall_time: Duration,
    /// Exponent on segment lengths, only set for [`Method::R2Hvc`].
    pub alpha: Option<u32>,
}

impl HvcEstimate {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Index of the smallest value, lowest index on ties.
    pub fn argmin(&self) -> Option<usize> {
        argmin(&self.values)
    }
}

pub(crate) fn argmin(values: &[f64]) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (i, &v) in values.iter().enumerate() {
        match best {
            Some((_, b)) if v >= b => {}
            _ => best = Some((i, v)),
        }
    }
    best.map(|(i, _)| i)
}

/// True iff `a` is at least as good as `b` everywhere and strictly better
/// somewhere.
pub fn dominates(a: &[f64], b: &[f64], o: Orientation) -> Result<bool> {
    if a.len() != b.len() {
        return Err(HvcError::DimensionMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    Ok(dominates_unchecked(a, b, o))
}

pub(crate) fn dominates_unchecked(a: &[f64], b: &[f64], o: Orientation) -> bool {
    let mut strict = false;
    for (&x, &y) in a.iter().zip(b) {
        if !o.at_least_as_good(x, y) {
            return false;
        }
        strict |= o.strictly_better(x, y);
    }
    strict
}

/// Findings from [`validate_set`]. Empty lists mean a clean set.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Diagnostics {
    /// Set when the reference point's dimension differs from the set's.
    pub reference_dim_mismatch: Option<usize>,
    /// Solutions not strictly better than the reference in every objective.
    pub not_better_than_reference: Vec<usize>,
    /// Pairs `(i, j)`, `i < j`, of identical solutions.
    pub duplicates: Vec<(usize, usize)>,
    /// Solutions dominated by another member of the set.
    pub dominated: Vec<usize>,
}

impl Diagnostics {
    pub fn is_clean(&self) -> bool {
        self.reference_dim_mismatch.is_none()
            && self.not_better_than_reference.is_empty()
            && self.duplicates.is_empty()
            && self.dominated.is_empty()
    }
}

pub fn validate_set(set: &SolutionSet, r: &ReferencePoint) -> Diagnostics {
    let mut report = Diagnostics::default();
    let o = set.orientation();
    if r.dim() != set.dim() {
        report.reference_dim_mismatch = Some(r.dim());
    } else {
        report.not_better_than_reference = set
            .points()
            .iter()
            .enumerate()
            .filter(|(_, p)| !set.strictly_inside(p, r))
            .map(|(i, _)| i)
            .collect();
    }
    let points = set.points();
    for (i, p) in points.iter().enumerate() {
        for (j, q) in points.iter().enumerate().skip(i + 1) {
            if p == q {
                report.duplicates.push((i, j));
            }
        }
        if points
            .iter()
            .enumerate()
            .any(|(j, q)| j != i && dominates_unchecked(q, p, o))
        {
            report.dominated.push(i);
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(rows: &[&[f64]]) -> SolutionSet {
        SolutionSet::from_rows(
            Orientation::Maximize,
            rows.iter().map(|r| r.to_vec()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn dominance_examples() {
        let max = Orientation::Maximize;
        assert!(dominates(&[1.0, 1.0], &[0.0, 0.0], max).unwrap());
        assert!(!dominates(&[1.0, 0.0], &[0.0, 1.0], max).unwrap());
        assert!(!dominates(&[0.5, 0.5], &[0.5, 0.5], max).unwrap());
        assert!(dominates(&[0.0, 0.0], &[1.0, 1.0], Orientation::Minimize).unwrap());
        assert!(matches!(
            dominates(&[1.0], &[1.0, 2.0], max),
            Err(HvcError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn validate_examples() {
        let r = ReferencePoint::new(vec![0.0, 0.0]).unwrap();
        assert!(validate_set(&set(&[&[1.0, 1.0]]), &r).is_clean());

        let dup = validate_set(&set(&[&[1.0, 1.0], &[1.0, 1.0]]), &r);
        assert_eq!(dup.duplicates, vec![(0, 1)]);
        assert!(dup.dominated.is_empty());

        let dom = validate_set(&set(&[&[0.5, 0.5], &[1.0, 1.0]]), &r);
        assert_eq!(dom.dominated, vec![0]);

        let outside = validate_set(&set(&[&[1.0, 0.0], &[0.5, 0.5]]), &r);
        assert_eq!(outside.not_better_than_reference, vec![0]);

        let bad_ref = validate_set(&set(&[&[1.0, 1.0]]), &ReferencePoint::new(vec![0.0]).unwrap());
        assert_eq!(bad_ref.reference_dim_mismatch, Some(1));
    }

    #[test]
    fn rejects_non_finite_and_ragged_input() {
        assert!(matches!(
            ObjectiveVector::new(vec![1.0, f64::NAN]),
            Err(HvcError::NonFinite(1))
        ));
        assert!(ObjectiveVector::new(vec![]).is_err());
        assert!(ReferencePoint::new(vec![f64::INFINITY]).is_err());
        assert!(SolutionSet::from_rows(Orientation::Maximize, vec![vec![1.0, 2.0], vec![1.0]])
            .is_err());
        assert!(SolutionSet::new(Orientation::Maximize, vec![]).is_err());
    }

    #[test]
    fn direction_set_checks_invariants() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let d = DirectionSet::new(vec![vec![h, h]], 7).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d.seed(), 7);
        assert!(DirectionSet::new(vec![vec![1.0, 0.0]], 0).is_err());
        assert!(DirectionSet::new(vec![vec![0.5, 0.5]], 0).is_err());

        let clamped = DirectionSet::from_unnormalized(vec![vec![1.0, 0.0]], 0).unwrap();
        let v = clamped.get(0).unwrap();
        assert_eq!(v[0], 1.0);
        assert!(v[1] >= DIRECTION_EPSILON * 0.999_999);
    }

    #[test]
    fn argmin_prefers_lowest_index() {
        assert_eq!(argmin(&[2.0, 1.0, 1.0]), Some(1));
        assert_eq!(argmin(&[]), None);
    }

    fn vec3() -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(-1.0f64..1.0, 3)
    }

    proptest! {
        #[test]
        fn dominance_is_irreflexive_and_transitive(a in vec3(), b in vec3(), c in vec3()) {
            let o = Orientation::Maximize;
            prop_assert!(!dominates(&a, &a, o).unwrap());
            if dominates(&a, &b, o).unwrap() && dominates(&b, &c, o).unwrap() {
                prop_assert!(dominates(&a, &c, o).unwrap());
            }
        }

        #[test]
        fn negation_swaps_orientation(a in vec3(), b in vec3()) {
            let na: Vec<f64> = a.iter().map(|x| -x).collect();
            let nb: Vec<f64> = b.iter().map(|x| -x).collect();
            prop_assert_eq!(
                dominates(&a, &b, Orientation::Maximize).unwrap(),
                dominates(&na, &nb, Orientation::Minimize).unwrap()
            );
        }

        #[test]
        fn transitivity_on_coarse_grid(pts in prop::collection::vec(prop::collection::vec(0u8..3, 2), 3..8)) {
            // a coarse grid produces many comparable and equal pairs
            let pts: Vec<Vec<f64>> = pts.into_iter().map(|p| p.into_iter().map(f64::from).collect()).collect();
            let o = Orientation::Maximize;
            for a in &pts {
                for b in &pts {
                    for c in &pts {
                        if dominates(a, b, o).unwrap() && dominates(b, c, o).unwrap() {
                            prop_assert!(dominates(a, c, o).unwrap());
                        }
                    }
                }
            }
        }
    }
}
