//! Hypervolume contributions, exactly and by approximation.
//!
//! * [`exact`]: ground-truth hypervolume and contributions for `m <= 8`.
//! * [`contribution`]: the R2-HVC indicator, the R2 contribution on R2^HV,
//!   and per-solution Monte Carlo sampling.
//! * [`indicators`] and [`scalarize`]: the R2 indicators and Tchebycheff
//!   scalarizers the estimators are built from.
//! * [`generate`]: benchmark fronts and direction vectors.
//! * [`metrics`]: consistency and identification rates.

pub mod contribution;
pub mod error;
pub mod exact;
pub mod generate;
pub mod indicators;
pub mod io;
pub mod metrics;
pub mod rng;
pub mod scalarize;
pub mod types;

pub use contribution::{
    monte_carlo_hvc, r2_contribution, r2_hvc, segment_length, segment_length_via_augmented_points,
    R2HvcParams,
};
pub use error::{HvcError, Result};
pub use exact::{hv_exact, hv_inclusion_exclusion, hvc_exact, smallest_contributor, MAX_EXACT_DIM};
pub use generate::{make_benchmark_suite, reference_point, sample_directions, sample_front, PfShape};
pub use indicators::{per_direction_best_two, r2_2tch, r2_hv, r2_mtch, BestTwo};
pub use metrics::{aggregate_runs, consistency_rate, correct_identification, identification_rate, RunSummary};
pub use types::{
    dominates, validate_set, Diagnostics, DirectionSet, HvcEstimate, Method, ObjectiveVector,
    Orientation, ReferencePoint, SolutionSet, DIRECTION_EPSILON,
};
