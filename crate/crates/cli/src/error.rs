use std::path::PathBuf;

use hvc_core::HvcError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },

    #[error("invalid config: {0}")]
    Config(String),

    #[error("missing solution set {path}; run `hvc gen` first")]
    MissingSet { path: PathBuf },

    #[error(
        "exact engine requested for m = {m}, above its limit of m <= {guard}; \
         drop \"exact\" from the methods or restrict dims"
    )]
    DimensionGuard { m: usize, guard: usize },

    #[error("missing input {path}: {hint}")]
    MissingInput { path: PathBuf, hint: &'static str },

    #[error("bad input: {0}")]
    BadInput(String),

    #[error(transparent)]
    Core(#[from] HvcError),
}

impl CliError {
    pub fn io(context: impl Into<String>, source: std::io::Error) -> Self {
        CliError::Io {
            context: context.into(),
            source,
        }
    }

    /// Process exit status for this failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Config(_) => 2,
            CliError::MissingSet { .. } => 3,
            CliError::DimensionGuard { .. } => 4,
            CliError::MissingInput { .. } | CliError::BadInput(_) => 5,
            CliError::Core(HvcError::DimensionGuard { .. }) => 4,
            CliError::Core(_) => 2,
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Core(HvcError::Csv(e))
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
