//! Fixtures shared by the criterion benches.

use hvc_core::{reference_point, sample_directions, sample_front, DirectionSet, PfShape, ReferencePoint, SolutionSet};

pub const SEED: u64 = 7;

/// One benchmark case: a front, its reference point and a direction set.
pub struct Fixture {
    pub set: SolutionSet,
    pub r: ReferencePoint,
    pub directions: DirectionSet,
}

pub fn fixture(shape: PfShape, m: usize, n: usize, budget: usize) -> Fixture {
    Fixture {
        set: sample_front(shape, m, n, SEED).expect("valid front"),
        r: reference_point(m, -0.2).expect("valid reference"),
        directions: sample_directions(m, budget, SEED + 1).expect("valid directions"),
    }
}
