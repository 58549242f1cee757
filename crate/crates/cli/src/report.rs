//! `report`: reshape metrics.csv (and bench.csv when present) into one long
//! table per figure axis, plus a plain-text summary.

use std::cmp::Ordering;
use std::fmt::Write as _;
use std::path::PathBuf;

use hvc_core::PfShape;
use serde::Serialize;

use crate::bench::{read_bench, BenchRow};
use crate::config::ExperimentConfig;
use crate::error::{CliError, Result};
use crate::eval::{read_metrics, MetricRow};
use crate::layout::{self, BENCH_FILE, METRICS_FILE, REPORT_DIR};

pub const METRIC_VS_R: &str = "metric_vs_r.csv";
pub const METRIC_VS_BUDGET: &str = "metric_vs_budget.csv";
pub const METRIC_VS_N: &str = "metric_vs_n.csv";
pub const RUNTIME_VS_BUDGET: &str = "runtime_vs_budget.csv";
pub const SUMMARY: &str = "summary.txt";

const METHOD_ORDER: [&str; 4] = ["r2hvc", "r2hvc-a1", "r2contrib", "montecarlo"];

fn shape_rank(name: &str) -> usize {
    PfShape::ALL
        .iter()
        .position(|s| s.name() == name)
        .unwrap_or(PfShape::ALL.len())
}

fn method_cmp(a: &str, b: &str) -> Ordering {
    let rank = |m: &str| METHOD_ORDER.iter().position(|&x| x == m).unwrap_or(METHOD_ORDER.len());
    rank(a).cmp(&rank(b)).then_with(|| a.cmp(b))
}

fn shape_cmp(a: &str, b: &str) -> Ordering {
    shape_rank(a).cmp(&shape_rank(b)).then_with(|| a.cmp(b))
}

/// Reference points closest to the front first.
fn r_cmp(a: f64, b: f64) -> Ordering {
    b.total_cmp(&a)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Metric {
    Consistency,
    Identification,
}

impl Metric {
    const ALL: [Metric; 2] = [Metric::Consistency, Metric::Identification];

    fn name(self) -> &'static str {
        match self {
            Metric::Consistency => "consistency",
            Metric::Identification => "identification",
        }
    }

    fn of(self, row: &MetricRow) -> (f64, f64) {
        match self {
            Metric::Consistency => (row.mean_consistency, row.sd_consistency),
            Metric::Identification => (row.identification_rate, row.sd_identification),
        }
    }
}

#[derive(Debug, Serialize)]
struct MetricPoint<'a> {
    shape: &'a str,
    m: usize,
    #[serde(rename = "N")]
    n: usize,
    r: f64,
    method: &'a str,
    budget: usize,
    metric: &'a str,
    mean: f64,
    sd: f64,
    n_runs: usize,
}

#[derive(Debug, Serialize)]
struct RuntimePoint<'a> {
    shape: &'a str,
    m: usize,
    #[serde(rename = "N")]
    n: usize,
    r: f64,
    method: &'a str,
    budget: usize,
    median_total_s: f64,
    min_total_s: f64,
    max_total_s: f64,
}

/// Which grid variable runs fastest in a table.
#[derive(Debug, Clone, Copy)]
enum Axis {
    R,
    Budget,
    N,
}

fn axis_cmp(axis: Axis, a: &MetricRow, b: &MetricRow) -> Ordering {
    let r = r_cmp(a.r, b.r);
    let budget = a.budget.cmp(&b.budget);
    let n = a.n.cmp(&b.n);
    let fixed = shape_cmp(&a.shape, &b.shape).then(a.m.cmp(&b.m));
    let method = method_cmp(&a.method, &b.method);
    match axis {
        Axis::R => fixed.then(n).then(budget).then(method).then(r),
        Axis::Budget => fixed.then(n).then(r).then(method).then(budget),
        Axis::N => fixed.then(r).then(budget).then(method).then(n),
    }
}

fn write_metric_table(path: &PathBuf, rows: &[MetricRow], axis: Axis) -> Result<()> {
    let mut sorted: Vec<&MetricRow> = rows.iter().collect();
    sorted.sort_by(|a, b| axis_cmp(axis, a, b));
    let mut w = layout::csv_writer(path)?;
    // One block per metric so each figure panel reads contiguously.
    for metric in Metric::ALL {
        for row in &sorted {
            let (mean, sd) = metric.of(row);
            w.serialize(MetricPoint {
                shape: &row.shape,
                m: row.m,
                n: row.n,
                r: row.r,
                method: &row.method,
                budget: row.budget,
                metric: metric.name(),
                mean,
                sd,
                n_runs: row.n_runs,
            })?;
        }
    }
    layout::flush(w, path)
}

fn write_runtime_table(path: &PathBuf, rows: &[BenchRow]) -> Result<()> {
    let mut sorted: Vec<(&BenchRow, String)> = rows.iter().map(|r| (r, r.label())).collect();
    sorted.sort_by(|(a, la), (b, lb)| {
        shape_cmp(&a.shape, &b.shape)
            .then(a.m.cmp(&b.m))
            .then(a.n.cmp(&b.n))
            .then(r_cmp(a.r, b.r))
            .then(method_cmp(la, lb))
            .then(a.budget.cmp(&b.budget))
    });
    let mut w = layout::csv_writer(path)?;
    for (row, label) in &sorted {
        w.serialize(RuntimePoint {
            shape: &row.shape,
            m: row.m,
            n: row.n,
            r: row.r,
            method: label,
            budget: row.budget,
            median_total_s: row.median_total_s,
            min_total_s: row.min_total_s,
            max_total_s: row.max_total_s,
        })?;
    }
    layout::flush(w, path)
}

/// Best method per (shape, m, N, r, budget) for each metric.
fn summary(rows: &[MetricRow], bench: Option<&[BenchRow]>) -> String {
    let mut sorted: Vec<&MetricRow> = rows.iter().collect();
    sorted.sort_by(|a, b| {
        shape_cmp(&a.shape, &b.shape)
            .then(a.m.cmp(&b.m))
            .then(a.n.cmp(&b.n))
            .then(a.budget.cmp(&b.budget))
            .then(r_cmp(a.r, b.r))
            .then(method_cmp(&a.method, &b.method))
    });
    let mut groups: Vec<Vec<&MetricRow>> = Vec::new();
    for row in sorted {
        match groups.last_mut() {
            Some(g)
                if g[0].shape == row.shape
                    && g[0].m == row.m
                    && g[0].n == row.n
                    && g[0].budget == row.budget
                    && g[0].r.total_cmp(&row.r).is_eq() =>
            {
                g.push(row)
            }
            _ => groups.push(vec![row]),
        }
    }
    let mut text = String::new();
    let _ = writeln!(text, "{} metric rows in {} grid cells", rows.len(), groups.len());
    for g in &groups {
        let head = g[0];
        let _ = write!(text, "{} m={} N={} budget={} r={}:", head.shape, head.m, head.n, head.budget, head.r);
        for metric in Metric::ALL {
            // first in method order wins ties
            let best = g
                .iter()
                .copied()
                .reduce(|a, b| if metric.of(b).0 > metric.of(a).0 { b } else { a })
                .expect("non-empty group");
            let _ = write!(text, " best {} {} ({:.4})", metric.name(), best.method, metric.of(best).0);
        }
        text.push('\n');
    }
    if let Some(bench) = bench {
        let _ = writeln!(text, "runtime: {} bench rows", bench.len());
        for row in bench {
            let _ = writeln!(
                text,
                "{} m={} N={} r={} {} budget={}: median {:.6} s over {} sets",
                row.shape,
                row.m,
                row.n,
                row.r,
                row.label(),
                row.budget,
                row.median_total_s,
                row.n_sets
            );
        }
    }
    text
}

/// Paths written, in a fixed order.
pub fn report(config: &ExperimentConfig) -> Result<Vec<PathBuf>> {
    let out = &config.output_dir;
    let rows = read_metrics(&out.join(METRICS_FILE))?;
    if rows.is_empty() {
        return Err(CliError::BadInput(format!("{METRICS_FILE} has no rows")));
    }
    let bench_path = out.join(BENCH_FILE);
    let bench = if bench_path.is_file() {
        Some(read_bench(&bench_path)?)
    } else {
        None
    };

    let dir = out.join(REPORT_DIR);
    layout::create_dir(&dir)?;
    let mut written = Vec::new();
    for (name, axis) in [(METRIC_VS_R, Axis::R), (METRIC_VS_BUDGET, Axis::Budget), (METRIC_VS_N, Axis::N)] {
        let path = dir.join(name);
        write_metric_table(&path, &rows, axis)?;
        written.push(path);
    }
    if let Some(bench) = &bench {
        let path = dir.join(RUNTIME_VS_BUDGET);
        write_runtime_table(&path, bench)?;
        written.push(path);
    }
    let path = dir.join(SUMMARY);
    std::fs::write(&path, summary(&rows, bench.as_deref()))
        .map_err(|e| CliError::io(format!("writing {}", path.display()), e))?;
    written.push(path);
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(method: &str, r: f64, budget: usize, ident: f64) -> MetricRow {
        MetricRow {
            shape: "linear_triangular".into(),
            m: 3,
            n: 20,
            r,
            method: method.into(),
            budget,
            mean_consistency: 0.9,
            sd_consistency: 0.0,
            identification_rate: ident,
            sd_identification: 0.0,
            n_runs: 1,
        }
    }

    #[test]
    fn orders_by_axis() {
        let rows = vec![row("montecarlo", -0.2, 100, 0.1), row("r2hvc", 0.0, 500, 0.5), row("r2hvc", -0.2, 100, 0.4)];
        let mut sorted: Vec<&MetricRow> = rows.iter().collect();
        sorted.sort_by(|a, b| axis_cmp(Axis::R, a, b));
        assert_eq!((sorted[0].method.as_str(), sorted[0].budget), ("r2hvc", 100));
        assert_eq!(sorted[1].method, "montecarlo");
        assert_eq!(sorted[2].budget, 500);
        sorted.sort_by(|a, b| axis_cmp(Axis::Budget, a, b));
        assert_eq!(sorted[0].r, 0.0);
    }

    #[test]
    fn summary_names_the_best_method() {
        let rows = vec![
            row("montecarlo", -0.2, 100, 0.1),
            row("r2hvc", 0.0, 100, 0.9),
            row("r2hvc", -0.2, 100, 0.4),
        ];
        let text = summary(&rows, None);
        assert!(text.starts_with("3 metric rows in 2 grid cells"), "{text}");
        assert!(text.contains("best identification r2hvc (0.4000)"), "{text}");
        assert!(text.contains("best consistency r2hvc"), "{text}");
    }
}
