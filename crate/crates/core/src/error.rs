use thiserror::Error;

#[derive(Debug, Error)]
pub enum HvcError {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("non-finite objective value at component {0}")]
    NonFinite(usize),

    #[error("empty vector: objective vectors need at least one component")]
    EmptyVector,

    #[error("solution set is empty")]
    EmptySet,

    #[error("operation needs at least {needed} solutions, got {found}")]
    TooFewSolutions { needed: usize, found: usize },

    #[error("solution index {index} out of range for a set of {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error(
        "exact hypervolume is limited to m <= {guard} objectives (got {m}); \
         use r2_hvc, r2_contribution or monte_carlo_hvc instead"
    )]
    DimensionGuard { m: usize, guard: usize },

    #[error("inclusion-exclusion oracle is limited to {guard} points (got {found})")]
    TooManyPoints { found: usize, guard: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, HvcError>;
