//! Where files live and how per-task seeds are derived.

use std::path::{Path, PathBuf};

use hvc_core::rng::derive_seed;
use hvc_core::PfShape;

use crate::config::ExperimentConfig;
use crate::error::{CliError, Result};

const SET_STREAM: u64 = 1;
const DIRECTION_STREAM: u64 = 2;
const SAMPLE_STREAM: u64 = 3;

/// One (shape, m, N) cell of the grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Suite {
    pub shape: PfShape,
    pub m: usize,
    pub n: usize,
}

impl Suite {
    fn shape_code(&self) -> u64 {
        PfShape::ALL.iter().position(|&s| s == self.shape).expect("known shape") as u64
    }

    fn path(&self, stream: u64) -> [u64; 4] {
        [stream, self.shape_code(), self.m as u64, self.n as u64]
    }

    pub fn dir(&self, output_dir: &Path) -> PathBuf {
        output_dir
            .join("sets")
            .join(self.shape.name())
            .join(format!("{}d", self.m))
            .join(self.n.to_string())
    }

    pub fn set_seed(&self, seed: u64) -> u64 {
        derive_seed(seed, &self.path(SET_STREAM))
    }

    /// Directions for one (set, run, budget). Shared by r2hvc and r2contrib
    /// and independent of the reference point.
    pub fn direction_seed(&self, seed: u64, set: usize, run: usize, budget: usize) -> u64 {
        let [a, b, c, d] = self.path(DIRECTION_STREAM);
        derive_seed(seed, &[a, b, c, d, set as u64, run as u64, budget as u64])
    }

    pub fn sample_seed(&self, seed: u64, set: usize, run: usize, budget: usize) -> u64 {
        let [a, b, c, d] = self.path(SAMPLE_STREAM);
        derive_seed(seed, &[a, b, c, d, set as u64, run as u64, budget as u64])
    }
}

pub fn set_stem(index: usize) -> String {
    format!("set_{index}")
}

/// Suites in config order: shapes outermost, then m, then N.
pub fn suites(config: &ExperimentConfig) -> Vec<Suite> {
    let mut out = Vec::new();
    for &shape in &config.shapes {
        for &m in &config.dims {
            for &n in &config.set_sizes {
                out.push(Suite { shape, m, n });
            }
        }
    }
    out
}

pub const RESULTS_FILE: &str = "results.csv";
pub const VALUES_FILE: &str = "values.csv";
pub const METRICS_FILE: &str = "metrics.csv";
pub const BENCH_FILE: &str = "bench.csv";
pub const REPORT_DIR: &str = "report";

pub fn create_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(format!("creating {}", dir.display()), e))
}

pub fn csv_writer(path: &Path) -> Result<csv::Writer<std::fs::File>> {
    if let Some(parent) = path.parent() {
        create_dir(parent)?;
    }
    let file = std::fs::File::create(path)
        .map_err(|e| CliError::io(format!("creating {}", path.display()), e))?;
    Ok(csv::Writer::from_writer(file))
}

/// Opens a CSV produced by an earlier stage and checks its header matches
/// `expected` exactly.
pub fn csv_reader(path: &Path, expected: &[&str], hint: &'static str) -> Result<csv::Reader<std::fs::File>> {
    let file = match std::fs::File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => {
            return Err(CliError::MissingInput {
                path: path.to_path_buf(),
                hint,
            })
        }
        Err(e) => return Err(CliError::io(format!("opening {}", path.display()), e)),
    };
    let mut reader = csv::Reader::from_reader(file);
    let header = reader
        .headers()
        .map_err(|e| CliError::BadInput(format!("{}: {e}", path.display())))?;
    if header.iter().ne(expected.iter().copied()) {
        let unknown: Vec<&str> = header.iter().filter(|h| !expected.contains(h)).collect();
        return Err(CliError::BadInput(format!(
            "{}: header {:?} does not match {:?}{}",
            path.display(),
            header.iter().collect::<Vec<_>>(),
            expected,
            if unknown.is_empty() {
                String::new()
            } else {
                format!(" (unknown columns {unknown:?})")
            }
        )));
    }
    Ok(reader)
}

pub fn flush(mut w: csv::Writer<std::fs::File>, path: &Path) -> Result<()> {
    w.flush().map_err(|e| CliError::io(format!("writing {}", path.display()), e))
}
