//! `eval`: turn values.csv into per-grid-cell accuracy metrics.

use std::collections::HashMap;
use std::path::Path;

use hvc_core::metrics::{pairwise_consistency, same_argmin, DEFAULT_TIE_TOLERANCE};
use hvc_core::{aggregate_runs, Method};
use serde::{Deserialize, Serialize};

use crate::config::ExperimentConfig;
use crate::error::{CliError, Result};
use crate::experiment::VALUES_COLUMNS;
use crate::layout::{self, METRICS_FILE, VALUES_FILE};

pub const METRICS_COLUMNS: [&str; 11] = [
    "shape",
    "m",
    "N",
    "r",
    "method",
    "budget",
    "mean_consistency",
    "sd_consistency",
    "identification_rate",
    "sd_identification",
    "n_runs",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricRow {
    pub shape: String,
    pub m: usize,
    #[serde(rename = "N")]
    pub n: usize,
    pub r: f64,
    pub method: String,
    pub budget: usize,
    pub mean_consistency: f64,
    pub sd_consistency: f64,
    pub identification_rate: f64,
    pub sd_identification: f64,
    pub n_runs: usize,
}

/// Grid cell plus method, as text straight from values.csv.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct CellKey {
    shape: String,
    m: String,
    n: String,
    r: String,
    method: String,
    budget: String,
    alpha: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct EstimateKey {
    cell: CellKey,
    run: String,
    set_id: String,
}

fn label(cell: &CellKey) -> String {
    if cell.method == Method::R2Hvc.name() && !cell.alpha.is_empty() && cell.alpha != cell.m {
        format!("{}-a{}", cell.method, cell.alpha)
    } else {
        cell.method.clone()
    }
}

fn parse<T: std::str::FromStr>(text: &str, what: &str) -> Result<T> {
    text.parse()
        .map_err(|_| CliError::BadInput(format!("cannot parse {what} {text:?}")))
}

/// Per-solution value vectors keyed by estimate, in first-seen order.
struct Estimates {
    order: Vec<EstimateKey>,
    values: HashMap<EstimateKey, Vec<f64>>,
}

fn read_values(path: &Path) -> Result<Estimates> {
    let mut reader = layout::csv_reader(path, &VALUES_COLUMNS, "run `hvc run` first")?;
    let mut est = Estimates {
        order: Vec::new(),
        values: HashMap::new(),
    };
    let mut record = csv::StringRecord::new();
    while reader
        .read_record(&mut record)
        .map_err(|e| CliError::BadInput(format!("{}: {e}", path.display())))?
    {
        let key = EstimateKey {
            cell: CellKey {
                shape: record[1].to_owned(),
                m: record[2].to_owned(),
                n: record[3].to_owned(),
                r: record[4].to_owned(),
                method: record[5].to_owned(),
                budget: record[6].to_owned(),
                alpha: record[7].to_owned(),
            },
            run: record[8].to_owned(),
            set_id: record[0].to_owned(),
        };
        let index: usize = parse(&record[9], "index")?;
        let value: f64 = parse(&record[10], "value")?;
        let slot = match est.values.get_mut(&key) {
            Some(v) => v,
            None => {
                est.order.push(key.clone());
                est.values.entry(key).or_default()
            }
        };
        if index != slot.len() {
            return Err(CliError::BadInput(format!(
                "{}: solution index {index} out of sequence",
                path.display()
            )));
        }
        slot.push(value);
    }
    Ok(est)
}

/// Metrics computed from value vectors: every non-exact estimate is scored
/// against the exact row of the same set, reference point and run.
fn compute(est: &Estimates) -> Result<Vec<MetricRow>> {
    // cell -> run -> per-set (consistency, identified)
    let mut cells: Vec<CellKey> = Vec::new();
    let mut scores: HashMap<CellKey, Vec<(String, Vec<(f64, bool)>)>> = HashMap::new();
    for key in &est.order {
        if key.cell.method == Method::Exact.name() {
            continue;
        }
        let truth_key = EstimateKey {
            cell: CellKey {
                method: Method::Exact.name().to_owned(),
                budget: "0".to_owned(),
                alpha: String::new(),
                ..key.cell.clone()
            },
            ..key.clone()
        };
        let truth = est.values.get(&truth_key).ok_or_else(|| {
            CliError::BadInput(format!(
                "missing exact truth for {} m={} N={} r={} set {} run {}",
                key.cell.shape, key.cell.m, key.cell.n, key.cell.r, key.set_id, key.run
            ))
        })?;
        let approx = &est.values[key];
        let consistency = pairwise_consistency(truth, approx, DEFAULT_TIE_TOLERANCE)?;
        let identified = same_argmin(truth, approx)?;
        let runs = scores.entry(key.cell.clone()).or_insert_with(|| {
            cells.push(key.cell.clone());
            Vec::new()
        });
        match runs.iter_mut().find(|(run, _)| *run == key.run) {
            Some((_, sets)) => sets.push((consistency, identified)),
            None => runs.push((key.run.clone(), vec![(consistency, identified)])),
        }
    }

    let mut rows = Vec::with_capacity(cells.len());
    for cell in cells {
        let runs = &scores[&cell];
        let mut consistency = Vec::with_capacity(runs.len());
        let mut identification = Vec::with_capacity(runs.len());
        for (_, sets) in runs {
            let n = sets.len() as f64;
            consistency.push(sets.iter().map(|s| s.0).sum::<f64>() / n);
            identification.push(sets.iter().filter(|s| s.1).count() as f64 / n);
        }
        let c = aggregate_runs(&consistency, runs.len())?;
        let i = aggregate_runs(&identification, runs.len())?;
        rows.push(MetricRow {
            shape: cell.shape.clone(),
            m: parse(&cell.m, "m")?,
            n: parse(&cell.n, "N")?,
            r: parse(&cell.r, "r")?,
            method: label(&cell),
            budget: parse(&cell.budget, "budget")?,
            mean_consistency: c.mean,
            sd_consistency: c.stddev,
            identification_rate: i.mean,
            sd_identification: i.stddev,
            n_runs: runs.len(),
        });
    }
    Ok(rows)
}

/// Reads values.csv under the output directory and writes metrics.csv.
pub fn eval(config: &ExperimentConfig) -> Result<Vec<MetricRow>> {
    let est = read_values(&config.output_dir.join(VALUES_FILE))?;
    let rows = compute(&est)?;
    if rows.is_empty() {
        return Err(CliError::BadInput(format!(
            "{} holds no approximation rows",
            VALUES_FILE
        )));
    }
    let path = config.output_dir.join(METRICS_FILE);
    let mut w = layout::csv_writer(&path)?;
    for row in &rows {
        w.serialize(row)?;
    }
    layout::flush(w, &path)?;
    Ok(rows)
}

pub fn read_metrics(path: &Path) -> Result<Vec<MetricRow>> {
    let mut reader = layout::csv_reader(path, &METRICS_COLUMNS, "run `hvc eval` first")?;
    reader
        .deserialize()
        .collect::<std::result::Result<Vec<MetricRow>, _>>()
        .map_err(|e| CliError::BadInput(format!("{}: {e}", path.display())))
}
