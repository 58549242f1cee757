//! Exact hypervolume and hypervolume contributions for low dimension.
//!
//! Points are first mapped into gain space (`gain_j = how far a_j is beyond
//! r_j`), where the reference is the origin and every objective is
//! maximized. Points with a non-positive gain in any objective span an empty
//! box and are dropped.
//!
//! The volume of the union of boxes `[0, g]` is computed by the WFG
//! recursion: points are swept in increasing order of the last objective and
//! each point contributes its exclusive volume against the points after it.
//! Limiting those later points by the current one pins their last
//! coordinate, so the exclusive volume reduces to a `(d - 1)`-dimensional
//! problem on a dominance-filtered set. Two dimensions are handled by a
//! direct sweep.

use std::cmp::Ordering;
use std::time::Instant;

use crate::error::{HvcError, Result};
use crate::types::{argmin, HvcEstimate, Method, ReferencePoint, SolutionSet};

/// Largest objective count accepted by the exact engine.
pub const MAX_EXACT_DIM: usize = 8;

/// Largest set accepted by the inclusion-exclusion oracle.
pub const MAX_INCLUSION_EXCLUSION_POINTS: usize = 20;

fn guard(set: &SolutionSet, r: &ReferencePoint) -> Result<()> {
    set.check_reference(r)?;
    if set.dim() > MAX_EXACT_DIM {
        return Err(HvcError::DimensionGuard {
            m: set.dim(),
            guard: MAX_EXACT_DIM,
        });
    }
    Ok(())
}

/// Gain-space coordinates of every point, `None` for empty boxes.
fn gains(set: &SolutionSet, r: &ReferencePoint) -> Vec<Option<Vec<f64>>> {
    let o = set.orientation();
    set.points()
        .iter()
        .map(|p| {
            let g: Vec<f64> = p.iter().zip(r.iter()).map(|(&a, &q)| o.gain(a, q)).collect();
            g.iter().all(|&x| x > 0.0).then_some(g)
        })
        .collect()
}

/// Flat row-major point buffer of fixed dimension.
#[derive(Clone)]
struct Points {
    dim: usize,
    data: Vec<f64>,
}

impl Points {
    fn with_capacity(dim: usize, n: usize) -> Self {
        Points {
            dim,
            data: Vec::with_capacity(dim * n),
        }
    }

    fn len(&self) -> usize {
        self.data.len() / self.dim
    }

    fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    fn push(&mut self, p: &[f64]) {
        self.data.extend_from_slice(p);
    }

    fn rows(&self) -> std::slice::ChunksExact<'_, f64> {
        self.data.chunks_exact(self.dim)
    }

    /// Reorders rows by `key`.
    fn sort_rows_by<F: Fn(&[f64], &[f64]) -> Ordering>(&mut self, cmp: F) {
        let mut idx: Vec<usize> = (0..self.len()).collect();
        idx.sort_by(|&a, &b| cmp(self.row(a), self.row(b)));
        let mut data = Vec::with_capacity(self.data.len());
        for i in idx {
            data.extend_from_slice(self.row(i));
        }
        self.data = data;
    }
}

fn box_volume(p: &[f64]) -> f64 {
    p.iter().product()
}

/// Removes weakly dominated rows, keeping the first of any duplicates.
fn nondominated(points: Points) -> Points {
    let n = points.len();
    if n < 2 {
        return points;
    }
    // Descending coordinate sum: a dominator always precedes what it dominates.
    let mut order: Vec<usize> = (0..n).collect();
    let sums: Vec<f64> = points.rows().map(|r| r.iter().sum()).collect();
    order.sort_by(|&a, &b| sums[b].total_cmp(&sums[a]).then(a.cmp(&b)));
    let mut kept = Points::with_capacity(points.dim, n);
    for i in order {
        let p = points.row(i);
        if !kept
            .rows()
            .any(|q| q.iter().zip(p).all(|(&qj, &pj)| qj >= pj))
        {
            kept.push(p);
        }
    }
    kept
}

fn volume_2d(mut points: Points) -> f64 {
    points.sort_rows_by(|a, b| b[0].total_cmp(&a[0]));
    let mut area = 0.0;
    let mut top = 0.0;
    for p in points.rows() {
        if p[1] > top {
            area += p[0] * (p[1] - top);
            top = p[1];
        }
    }
    area
}

/// Volume of the union of boxes `[0, p]` over all rows (all coordinates
/// assumed positive).
fn union_volume(points: Points) -> f64 {
    let n = points.len();
    let d = points.dim;
    match (n, d) {
        (0, _) => 0.0,
        (1, _) => box_volume(points.row(0)),
        (_, 1) => points.data.iter().copied().fold(0.0, f64::max),
        (_, 2) => volume_2d(points),
        _ => {
            let mut points = points;
            points.sort_rows_by(|a, b| a[d - 1].total_cmp(&b[d - 1]));
            let mut total = 0.0;
            for i in 0..n {
                let p = points.row(i);
                let head = &p[..d - 1];
                let mut limited = Points::with_capacity(d - 1, n - i - 1);
                for k in i + 1..n {
                    let q = points.row(k);
                    limited
                        .data
                        .extend(q[..d - 1].iter().zip(head).map(|(&a, &b)| a.min(b)));
                }
                let covered = union_volume(nondominated(limited));
                total += p[d - 1] * (box_volume(head) - covered);
            }
            total
        }
    }
}

/// Exclusive volume of `p` with respect to `others` (gain space).
fn exclusive_volume(p: &[f64], others: &[&[f64]]) -> f64 {
    // exact zero for covered points, independent of rounding in the sweep
    if others.iter().any(|q| q.iter().zip(p).all(|(a, b)| a >= b)) {
        return 0.0;
    }
    let mut limited = Points::with_capacity(p.len(), others.len());
    for q in others {
        limited
            .data
            .extend(q.iter().zip(p).map(|(&a, &b)| a.min(b)));
    }
    let own = box_volume(p);
    let covered = union_volume(nondominated(limited));
    (own - covered).max(0.0)
}

/// Exact hypervolume: volume of the union of boxes between `r` and each
/// solution.
pub fn hv_exact(set: &SolutionSet, r: &ReferencePoint) -> Result<f64> {
    guard(set, r)?;
    let mut points = Points::with_capacity(set.dim(), set.len());
    for g in gains(set, r).into_iter().flatten() {
        points.push(&g);
    }
    Ok(union_volume(nondominated(points)))
}

/// Exact hypervolume contribution of every solution.
///
/// Each value is the box volume of the solution minus the volume it shares
/// with the rest of the set, which equals `hv(A) - hv(A \ {s})`.
pub fn hvc_exact(set: &SolutionSet, r: &ReferencePoint) -> Result<HvcEstimate> {
    guard(set, r)?;
    let start = Instant::now();
    let gains = gains(set, r);
    let live: Vec<(usize, &[f64])> = gains
        .iter()
        .enumerate()
        .filter_map(|(i, g)| g.as_deref().map(|g| (i, g)))
        .collect();
    let mut values = vec![0.0; set.len()];
    let mut others: Vec<&[f64]> = Vec::with_capacity(live.len());
    for &(i, g) in &live {
        others.clear();
        others.extend(live.iter().filter(|(k, _)| *k != i).map(|(_, q)| *q));
        values[i] = exclusive_volume(g, &others);
    }
    Ok(HvcEstimate {
        method: Method::Exact,
        values,
        budget: 0,
        wall_time: start.elapsed(),
        alpha: None,
    })
}

/// Index of the solution with the smallest exact contribution, lowest index
/// on ties.
pub fn smallest_contributor(set: &SolutionSet, r: &ReferencePoint) -> Result<usize> {
    if set.is_empty() {
        return Err(HvcError::EmptySet);
    }
    let hvc = hvc_exact(set, r)?;
    Ok(argmin(&hvc.values).expect("nonempty set"))
}

/// Hypervolume by inclusion-exclusion over all nonempty subsets. Exponential
/// in `|A|`; used as an independent check on [`hv_exact`].
pub fn hv_inclusion_exclusion(set: &SolutionSet, r: &ReferencePoint) -> Result<f64> {
    set.check_reference(r)?;
    if set.len() > MAX_INCLUSION_EXCLUSION_POINTS {
        return Err(HvcError::TooManyPoints {
            found: set.len(),
            guard: MAX_INCLUSION_EXCLUSION_POINTS,
        });
    }
    let o = set.orientation();
    let points: Vec<&[f64]> = set.points().iter().map(|p| p.as_slice()).collect();

    // The meet of a subset is the componentwise worst point, whose box is
    // the intersection of the subset's boxes.
    fn walk(
        points: &[&[f64]],
        r: &[f64],
        o: crate::Orientation,
        start: usize,
        meet: &[f64],
        depth: usize,
    ) -> f64 {
        let mut total = 0.0;
        for i in start..points.len() {
            let next: Vec<f64> = meet
                .iter()
                .zip(points[i])
                .map(|(&a, &b)| if o.at_least_as_good(a, b) { b } else { a })
                .collect();
            let volume: f64 = next
                .iter()
                .zip(r)
                .map(|(&a, &q)| o.gain(a, q).max(0.0))
                .product();
            if volume == 0.0 {
                // every superset has an empty intersection too
                continue;
            }
            let sign = if depth % 2 == 0 { 1.0 } else { -1.0 };
            total += sign * volume;
            total += walk(points, r, o, i + 1, &next, depth + 1);
        }
        total
    }

    let best: Vec<f64> = match o {
        crate::Orientation::Maximize => vec![f64::INFINITY; set.dim()],
        crate::Orientation::Minimize => vec![f64::NEG_INFINITY; set.dim()],
    };
    Ok(walk(&points, r, o, 0, &best, 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{sample_front, PfShape};
    use crate::Orientation;

    fn max_set(rows: &[&[f64]]) -> SolutionSet {
        SolutionSet::from_rows(
            Orientation::Maximize,
            rows.iter().map(|r| r.to_vec()).collect(),
        )
        .unwrap()
    }

    fn origin(m: usize) -> ReferencePoint {
        ReferencePoint::uniform(m, 0.0).unwrap()
    }

    fn three() -> SolutionSet {
        max_set(&[&[0.25, 0.75], &[0.5, 0.5], &[0.75, 0.25]])
    }

    #[test]
    fn hv_examples() {
        assert_eq!(hv_exact(&max_set(&[&[1.0, 1.0]]), &origin(2)).unwrap(), 1.0);
        assert_eq!(hv_exact(&three(), &origin(2)).unwrap(), 0.375);
        assert_eq!(hv_inclusion_exclusion(&three(), &origin(2)).unwrap(), 0.375);
    }

    #[test]
    fn inclusion_exclusion_examples() {
        let single = max_set(&[&[0.5, 0.25, 2.0]]);
        assert_eq!(hv_inclusion_exclusion(&single, &origin(3)).unwrap(), 0.25);
        let twins = max_set(&[&[0.5, 0.5], &[0.5, 0.5]]);
        assert_eq!(hv_inclusion_exclusion(&twins, &origin(2)).unwrap(), 0.25);
        let big = sample_front(PfShape::LinearTriangular, 2, 21, 0).unwrap();
        assert!(matches!(
            hv_inclusion_exclusion(&big, &origin(2)),
            Err(HvcError::TooManyPoints { .. })
        ));
    }

    #[test]
    fn hvc_examples() {
        let hvc = hvc_exact(&three(), &origin(2)).unwrap();
        assert_eq!(hvc.values, vec![0.0625, 0.0625, 0.0625]);
        assert_eq!(hvc.method, Method::Exact);
        assert_eq!(hvc.budget, 0);

        let dominated = hvc_exact(&max_set(&[&[1.0, 1.0], &[0.5, 0.9]]), &origin(2)).unwrap();
        assert_eq!(dominated.values[1], 0.0);

        assert_eq!(hvc_exact(&max_set(&[&[1.0, 1.0]]), &origin(2)).unwrap().values, vec![1.0]);
    }

    #[test]
    fn smallest_contributor_examples() {
        assert_eq!(smallest_contributor(&three(), &origin(2)).unwrap(), 0);
        let with_dominated = max_set(&[&[0.2, 0.9], &[0.1, 0.1], &[0.9, 0.2]]);
        assert_eq!(smallest_contributor(&with_dominated, &origin(2)).unwrap(), 1);
        assert_eq!(
            smallest_contributor(&max_set(&[&[1.0, 1.0], &[0.9, 0.9]]), &origin(2)).unwrap(),
            1
        );
    }

    #[test]
    fn dimension_guard() {
        let set = sample_front(PfShape::LinearTriangular, 9, 5, 0).unwrap();
        let r = origin(9);
        assert!(matches!(hv_exact(&set, &r), Err(HvcError::DimensionGuard { m: 9, .. })));
        assert!(matches!(hvc_exact(&set, &r), Err(HvcError::DimensionGuard { .. })));
        let msg = hv_exact(&set, &r).unwrap_err().to_string();
        assert!(msg.contains("r2_hvc"));
    }

    #[test]
    fn minimization_mirrors_maximization() {
        let set = sample_front(PfShape::ConcaveInverted, 4, 10, 3).unwrap();
        let r = ReferencePoint::uniform(4, -0.1).unwrap();
        let flipped = SolutionSet::from_rows(
            Orientation::Minimize,
            set.points().iter().map(|p| p.iter().map(|x| -x).collect()).collect(),
        )
        .unwrap();
        let r_flipped = ReferencePoint::uniform(4, 0.1).unwrap();
        assert_eq!(hv_exact(&set, &r).unwrap(), hv_exact(&flipped, &r_flipped).unwrap());
        let a = hv_inclusion_exclusion(&flipped, &r_flipped).unwrap();
        assert!((a - hv_exact(&set, &r).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn points_outside_the_reference_box_are_ignored() {
        let set = max_set(&[&[1.0, 1.0], &[2.0, -0.5], &[-1.0, 3.0]]);
        assert_eq!(hv_exact(&set, &origin(2)).unwrap(), 1.0);
        assert_eq!(hv_inclusion_exclusion(&set, &origin(2)).unwrap(), 1.0);
        assert_eq!(hvc_exact(&set, &origin(2)).unwrap().values, vec![1.0, 0.0, 0.0]);
    }

    #[test]
    fn one_dimension() {
        let set = max_set(&[&[0.3], &[0.7], &[0.1]]);
        assert_eq!(hv_exact(&set, &origin(1)).unwrap(), 0.7);
    }
}
