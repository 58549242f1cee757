//! Experiment pipeline over `hvc-core`: generate benchmark suites, run every
//! estimator on them, score the estimates against the exact engine, time the
//! methods and reshape the results into report tables.
//!
//! Each stage reads and writes plain CSV files under the configured output
//! directory, so the stages can be run separately from the `hvc` binary or
//! chained in-process.

pub mod bench;
pub mod config;
pub mod error;
pub mod eval;
pub mod experiment;
pub mod layout;
pub mod report;

pub use bench::{bench, BenchRow};
pub use config::{ExperimentConfig, MethodSpec};
pub use error::{CliError, Result};
pub use eval::{eval, MetricRow};
pub use experiment::{gen, run};
pub use report::report;
