//! Benchmark solution sets and direction vectors.
//!
//! Front points are drawn by sampling a weight vector uniformly on the unit
//! simplex (normalized exponential spacings) and pushing it through the
//! shape map. This is uniform on the linear front only; curved fronts get
//! the image of the simplex measure, which every method sees identically.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{HvcError, Result};
use crate::rng::stream;
use crate::types::{
    DirectionSet, ObjectiveVector, Orientation, ReferencePoint, SolutionSet, DIRECTION_EPSILON,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PfShape {
    LinearTriangular,
    ConcaveTriangular,
    ConvexTriangular,
    LinearInverted,
    ConcaveInverted,
    ConvexInverted,
}

impl PfShape {
    pub const ALL: [PfShape; 6] = [
        PfShape::LinearTriangular,
        PfShape::ConcaveTriangular,
        PfShape::ConvexTriangular,
        PfShape::LinearInverted,
        PfShape::ConcaveInverted,
        PfShape::ConvexInverted,
    ];

    pub const TRIANGULAR: [PfShape; 3] = [
        PfShape::LinearTriangular,
        PfShape::ConcaveTriangular,
        PfShape::ConvexTriangular,
    ];

    pub const INVERTED: [PfShape; 3] = [
        PfShape::LinearInverted,
        PfShape::ConcaveInverted,
        PfShape::ConvexInverted,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PfShape::LinearTriangular => "linear_triangular",
            PfShape::ConcaveTriangular => "concave_triangular",
            PfShape::ConvexTriangular => "convex_triangular",
            PfShape::LinearInverted => "linear_inverted",
            PfShape::ConcaveInverted => "concave_inverted",
            PfShape::ConvexInverted => "convex_inverted",
        }
    }

    pub fn is_inverted(self) -> bool {
        matches!(
            self,
            PfShape::LinearInverted | PfShape::ConcaveInverted | PfShape::ConvexInverted
        )
    }

    /// Maps a simplex weight vector onto the front.
    pub fn map_weight(self, w: &[f64]) -> Vec<f64> {
        let mut f: Vec<f64> = match self {
            PfShape::LinearTriangular | PfShape::LinearInverted => w.to_vec(),
            PfShape::ConcaveTriangular | PfShape::ConcaveInverted => {
                let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
                w.iter().map(|x| x / norm).collect()
            }
            PfShape::ConvexTriangular | PfShape::ConvexInverted => {
                w.iter().map(|x| x * x).collect()
            }
        };
        if self.is_inverted() {
            for x in &mut f {
                *x = 1.0 - *x;
            }
        }
        f
    }

    /// Deviation of `f` from the front's defining surface equation.
    pub fn surface_residual(self, f: &[f64]) -> f64 {
        let g: Vec<f64> = if self.is_inverted() {
            f.iter().map(|x| 1.0 - x).collect()
        } else {
            f.to_vec()
        };
        let lhs: f64 = match self {
            PfShape::LinearTriangular | PfShape::LinearInverted => g.iter().sum(),
            PfShape::ConcaveTriangular | PfShape::ConcaveInverted => g.iter().map(|x| x * x).sum(),
            PfShape::ConvexTriangular | PfShape::ConvexInverted => {
                g.iter().map(|x| x.max(0.0).sqrt()).sum()
            }
        };
        (lhs - 1.0).abs()
    }
}

impl fmt::Display for PfShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PfShape {
    type Err = HvcError;

    fn from_str(s: &str) -> Result<Self> {
        PfShape::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| HvcError::InvalidArgument(format!("unknown front shape {s:?}")))
    }
}

fn simplex_weight<R: Rng>(rng: &mut R, m: usize) -> Vec<f64> {
    loop {
        let e: Vec<f64> = (0..m).map(|_| Exp1.sample(rng)).collect();
        let total: f64 = e.iter().sum();
        if total > 0.0 {
            return e.into_iter().map(|x| x / total).collect();
        }
    }
}

/// `n` points on the given front, orientation [`Orientation::Maximize`].
pub fn sample_front(shape: PfShape, m: usize, n: usize, seed: u64) -> Result<SolutionSet> {
    if m < 2 {
        return Err(HvcError::InvalidArgument(format!("need m >= 2, got {m}")));
    }
    if n < 1 {
        return Err(HvcError::InvalidArgument("need n >= 1".into()));
    }
    let mut rng = stream(seed);
    let points = (0..n)
        .map(|_| ObjectiveVector::new(shape.map_weight(&simplex_weight(&mut rng, m))))
        .collect::<Result<Vec<_>>>()?;
    SolutionSet::with_dim(Orientation::Maximize, m, points)
}

/// `k` direction vectors `|x| / ||x||` with `x` standard normal, components
/// clamped to at least [`DIRECTION_EPSILON`] and renormalized.
pub fn sample_directions(m: usize, k: usize, seed: u64) -> Result<DirectionSet> {
    if m < 1 {
        return Err(HvcError::InvalidArgument("need m >= 1".into()));
    }
    if k < 1 {
        return Err(HvcError::InvalidArgument("need at least one direction".into()));
    }
    let mut rng = stream(seed);
    let mut data = Vec::with_capacity(m * k);
    let mut x = vec![0.0f64; m];
    for _ in 0..k {
        let norm = loop {
            for v in x.iter_mut() {
                *v = StandardNormal.sample(&mut rng);
            }
            let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            if norm > 0.0 {
                break norm;
            }
        };
        let start = data.len();
        data.extend(x.iter().map(|v| (v.abs() / norm).max(DIRECTION_EPSILON)));
        let renorm = data[start..].iter().map(|v| v * v).sum::<f64>().sqrt();
        for v in &mut data[start..] {
            *v /= renorm;
        }
    }
    Ok(DirectionSet::from_flat(m, data, seed))
}

pub fn reference_point(m: usize, r: f64) -> Result<ReferencePoint> {
    ReferencePoint::uniform(m, r)
}

/// `n_sets` independent fronts; set `i` is seeded from `(seed, i)`.
pub fn make_benchmark_suite(
    shape: PfShape,
    m: usize,
    n: usize,
    n_sets: usize,
    seed: u64,
) -> Result<Vec<SolutionSet>> {
    if n_sets < 1 {
        return Err(HvcError::InvalidArgument("need n_sets >= 1".into()));
    }
    (0..n_sets)
        .map(|i| sample_front(shape, m, n, suite_member_seed(seed, i)))
        .collect()
}

pub fn suite_member_seed(seed: u64, index: usize) -> u64 {
    crate::rng::derive_seed(seed, &[index as u64])
}
