use std::path::{Path, PathBuf};
use std::process::Command;

use hvc_cli::config::{ExperimentConfig, MethodSpec};
use hvc_cli::eval::MetricRow;
use hvc_cli::{bench, eval, gen, report, run, CliError};
use hvc_core::{Method, PfShape};
use rand::seq::SliceRandom;
use rand::Rng;

fn small_config(out: &Path) -> ExperimentConfig {
    ExperimentConfig {
        shapes: vec![PfShape::LinearTriangular, PfShape::ConvexInverted],
        dims: vec![3],
        set_sizes: vec![8],
        n_sets: 4,
        ref_scalars: vec![0.0, -0.2],
        methods: vec![
            MethodSpec::new(Method::R2Hvc, 50),
            MethodSpec::new(Method::R2Contribution, 50),
            MethodSpec::new(Method::MonteCarlo, 50),
            MethodSpec::exact(),
        ],
        n_runs: 2,
        seed: 11,
        output_dir: out.to_path_buf(),
    }
}

fn hvc() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hvc"))
}

fn write_config(dir: &Path, config: &ExperimentConfig) -> PathBuf {
    let path = dir.join("config.json");
    std::fs::write(&path, config.to_json()).unwrap();
    path
}

fn exit_code(args: &[&str]) -> i32 {
    let out = hvc().args(args).output().unwrap();
    out.status.code().unwrap()
}

fn count_files(dir: &Path, ext: &str) -> usize {
    let mut n = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        if path.is_dir() {
            n += count_files(&path, ext);
        } else if path.extension().is_some_and(|e| e == ext) {
            n += 1;
        }
    }
    n
}

fn read(path: &Path) -> Vec<u8> {
    std::fs::read(path).unwrap()
}

#[test]
fn desk_gen_writes_one_file_per_set_and_is_reproducible() {
    let tmp = tempfile::tempdir().unwrap();
    let mut config = ExperimentConfig::desk();
    config.output_dir = tmp.path().join("a");
    assert_eq!(gen(&config).unwrap(), 180);
    assert_eq!(count_files(&config.output_dir, "csv"), 180);
    assert_eq!(count_files(&config.output_dir, "json"), 180);

    let first = config.output_dir.join("sets/convex_inverted/3d/20/set_29.csv");
    let bytes = read(&first);
    gen(&config).unwrap();
    assert_eq!(read(&first), bytes);

    config.output_dir = tmp.path().join("b");
    gen(&config).unwrap();
    assert_eq!(read(&config.output_dir.join("sets/convex_inverted/3d/20/set_29.csv")), bytes);
}

#[test]
fn binary_gen_matches_library_and_reports_io_failure() {
    let tmp = tempfile::tempdir().unwrap();
    let config = small_config(&tmp.path().join("lib"));
    gen(&config).unwrap();
    let cfg_path = write_config(tmp.path(), &config);
    let out = tmp.path().join("bin");
    assert_eq!(exit_code(&["gen", "--config", cfg_path.to_str().unwrap(), "--out", out.to_str().unwrap()]), 0);
    let stem = "sets/linear_triangular/3d/8/set_3";
    for ext in ["csv", "json"] {
        assert_eq!(read(&out.join(format!("{stem}.{ext}"))), read(&config.output_dir.join(format!("{stem}.{ext}"))));
    }

    // a regular file where a directory is needed
    let blocker = tmp.path().join("blocker");
    std::fs::write(&blocker, "x").unwrap();
    let bad = blocker.join("out");
    let code = exit_code(&["gen", "--config", cfg_path.to_str().unwrap(), "--out", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(exit_code(&["gen", "--config", tmp.path().join("nope.json").to_str().unwrap()]), 2);
}

#[test]
fn run_row_counts_and_exit_codes() {
    let tmp = tempfile::tempdir().unwrap();
    let config = small_config(&tmp.path().join("o"));
    let cfg_path = write_config(tmp.path(), &config);
    let cfg = cfg_path.to_str().unwrap();

    assert_eq!(exit_code(&["run", "--config", cfg]), 3);
    assert!(matches!(run(&config), Err(CliError::MissingSet { .. })));
    assert_eq!(exit_code(&["gen", "--config", cfg]), 0);
    assert_eq!(exit_code(&["run", "--config", cfg]), 0);

    let results = std::fs::read_to_string(config.output_dir.join("results.csv")).unwrap();
    let lines: Vec<&str> = results.lines().collect();
    assert_eq!(lines[0], "set_id,shape,m,N,r,method,budget,alpha,run,wall_time_s");
    // 4 methods per set, run and reference point
    let suites = 2;
    assert_eq!(lines.len() - 1, suites * config.n_sets * config.n_runs * config.ref_scalars.len() * 4);
    let exact_rows: Vec<&&str> = lines.iter().filter(|l| l.contains(",exact,0,,")).collect();
    assert_eq!(exact_rows.len(), suites * config.n_sets * config.n_runs * config.ref_scalars.len());

    let values = std::fs::read_to_string(config.output_dir.join("values.csv")).unwrap();
    assert_eq!(values.lines().count() - 1, (lines.len() - 1) * 8);

    // deleting one set is reported as missing
    std::fs::remove_file(config.output_dir.join("sets/convex_inverted/3d/8/set_2.csv")).unwrap();
    assert_eq!(exit_code(&["run", "--config", cfg]), 3);
    assert_eq!(exit_code(&["bench", "--config", cfg]), 3);

    let mut high = config.clone();
    high.dims = vec![9];
    let high_path = write_config(&tmp.path().join("o"), &high);
    let out = hvc().args(["run", "--config", high_path.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("exact"));
    assert!(matches!(bench(&high), Err(CliError::DimensionGuard { m: 9, .. })));
}

#[test]
fn run_is_deterministic_apart_from_wall_time() {
    let tmp = tempfile::tempdir().unwrap();
    let strip = |path: PathBuf| -> Vec<String> {
        std::fs::read_to_string(path)
            .unwrap()
            .lines()
            .map(|l| l.rsplit_once(',').unwrap().0.to_owned())
            .collect()
    };
    let mut outputs = Vec::new();
    for name in ["a", "b"] {
        let config = small_config(&tmp.path().join(name));
        gen(&config).unwrap();
        run(&config).unwrap();
        eval(&config).unwrap();
        outputs.push(config.output_dir);
    }
    assert_eq!(strip(outputs[0].join("results.csv")), strip(outputs[1].join("results.csv")));
    assert_eq!(read(&outputs[0].join("values.csv")), read(&outputs[1].join("values.csv")));
    assert_eq!(read(&outputs[0].join("metrics.csv")), read(&outputs[1].join("metrics.csv")));

    let mut reseeded = small_config(&tmp.path().join("c"));
    reseeded.seed = 12;
    gen(&reseeded).unwrap();
    run(&reseeded).unwrap();
    assert_ne!(read(&outputs[0].join("values.csv")), read(&reseeded.output_dir.join("values.csv")));
}

/// Writes a values.csv holding an exact row and one approximation per set.
fn write_values(dir: &Path, sets: &[(Vec<f64>, Vec<f64>)]) {
    std::fs::create_dir_all(dir).unwrap();
    let mut text = String::from("set_id,shape,m,N,r,method,budget,alpha,run,index,value\n");
    for (id, (truth, approx)) in sets.iter().enumerate() {
        let n = truth.len();
        for (i, v) in truth.iter().enumerate() {
            text += &format!("{id},linear_triangular,3,{n},-0.2,exact,0,,0,{i},{v:?}\n");
        }
        for (i, v) in approx.iter().enumerate() {
            text += &format!("{id},linear_triangular,3,{n},-0.2,r2hvc,100,3,0,{i},{v:?}\n");
        }
    }
    std::fs::write(dir.join("values.csv"), text).unwrap();
}

fn eval_dir(dir: &Path) -> hvc_cli::Result<Vec<MetricRow>> {
    let mut config = small_config(dir);
    config.output_dir = dir.to_path_buf();
    eval(&config)
}

#[test]
fn eval_scores_perfect_and_shuffled_estimates() {
    let tmp = tempfile::tempdir().unwrap();
    let mut rng = hvc_core::rng::stream(5);
    let random_set = |rng: &mut hvc_core::rng::StreamRng| -> Vec<f64> { (0..20).map(|_| rng.random::<f64>()).collect() };

    let perfect: Vec<_> = (0..10)
        .map(|_| {
            let t = random_set(&mut rng);
            (t.clone(), t)
        })
        .collect();
    write_values(tmp.path(), &perfect);
    let rows = eval_dir(tmp.path()).unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!((rows[0].mean_consistency, rows[0].identification_rate), (1.0, 1.0));
    assert_eq!(rows[0].n_runs, 1);

    let shuffled: Vec<_> = (0..300)
        .map(|_| {
            let t = random_set(&mut rng);
            let mut a = t.clone();
            a.shuffle(&mut rng);
            (t, a)
        })
        .collect();
    write_values(tmp.path(), &shuffled);
    let rows = eval_dir(tmp.path()).unwrap();
    assert!((rows[0].mean_consistency - 0.5).abs() <= 0.05, "{}", rows[0].mean_consistency);
    let metrics = std::fs::read_to_string(tmp.path().join("metrics.csv")).unwrap();
    assert!(metrics.starts_with(
        "shape,m,N,r,method,budget,mean_consistency,sd_consistency,identification_rate,sd_identification,n_runs\n"
    ));
}

#[test]
fn eval_rejects_missing_truth_and_unknown_columns() {
    let tmp = tempfile::tempdir().unwrap();
    let config = small_config(tmp.path());
    let cfg_path = write_config(tmp.path(), &config);
    let cfg = cfg_path.to_str().unwrap();
    assert_eq!(exit_code(&["eval", "--config", cfg]), 5);

    let text = "set_id,shape,m,N,r,method,budget,alpha,run,index,value\n\
                0,linear_triangular,3,2,-0.2,r2hvc,100,3,0,0,0.1\n\
                0,linear_triangular,3,2,-0.2,r2hvc,100,3,0,1,0.2\n";
    std::fs::write(tmp.path().join("values.csv"), text).unwrap();
    assert_eq!(exit_code(&["eval", "--config", cfg]), 5);

    let extra = text.replacen("value\n", "value,colour\n", 1).replace("0.1\n", "0.1,red\n").replace("0.2\n", "0.2,red\n");
    std::fs::write(tmp.path().join("values.csv"), extra).unwrap();
    let out = hvc().args(["eval", "--config", cfg]).output().unwrap();
    assert_eq!(out.status.code(), Some(5));
    assert!(String::from_utf8_lossy(&out.stderr).contains("colour"));
}

#[test]
fn report_tables_have_one_row_per_reference_point_and_method() {
    let tmp = tempfile::tempdir().unwrap();
    let mut config = small_config(&tmp.path().join("o"));
    config.ref_scalars = vec![0.0, -0.1, -0.2, -0.3, -0.4];
    config.n_sets = 3;
    gen(&config).unwrap();
    run(&config).unwrap();
    eval(&config).unwrap();
    let written = report(&config).unwrap();
    assert_eq!(written.len(), 4);

    let table = std::fs::read_to_string(config.output_dir.join("report/metric_vs_r.csv")).unwrap();
    let mut lines = table.lines();
    assert_eq!(lines.next(), Some("shape,m,N,r,method,budget,metric,mean,sd,n_runs"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    for shape in ["linear_triangular", "convex_inverted"] {
        for metric in ["consistency", "identification"] {
            let n = rows.iter().filter(|r| r[0] == shape && r[6] == metric && r[5] == "50").count();
            assert_eq!(n, 15, "{shape} {metric}");
        }
    }
    // r runs fastest within a method block
    let first: Vec<&str> = rows.iter().take(5).map(|r| r[3]).collect();
    assert_eq!(first, ["0.0", "-0.1", "-0.2", "-0.3", "-0.4"]);

    let tables: Vec<Vec<u8>> = written[..3].iter().map(|p| read(p)).collect();
    bench(&ExperimentConfig { n_runs: 1, ..config.clone() }).unwrap();
    let again = report(&config).unwrap();
    assert_eq!(again.len(), 5);
    for (path, bytes) in again.iter().zip(&tables) {
        assert!(read(path) == *bytes, "{} changed", path.display());
    }
    let snapshot: Vec<Vec<u8>> = again.iter().map(|p| read(p)).collect();
    report(&config).unwrap();
    for (path, bytes) in again.iter().zip(&snapshot) {
        assert!(read(path) == *bytes, "{} is not reproducible", path.display());
    }
    let runtime = std::fs::read_to_string(config.output_dir.join("report/runtime_vs_budget.csv")).unwrap();
    assert_eq!(runtime.lines().count() - 1, 2 * 5 * 4);
}

#[test]
fn report_needs_metrics() {
    let tmp = tempfile::tempdir().unwrap();
    let config = small_config(tmp.path());
    let cfg_path = write_config(tmp.path(), &config);
    let cfg = cfg_path.to_str().unwrap();
    assert_eq!(exit_code(&["report", "--config", cfg]), 5);
    std::fs::write(
        tmp.path().join("metrics.csv"),
        "shape,m,N,r,method,budget,mean_consistency,sd_consistency,identification_rate,sd_identification,n_runs\n",
    )
    .unwrap();
    assert_eq!(exit_code(&["report", "--config", cfg]), 5);
}

#[test]
fn bench_checksums_are_reproducible() {
    let tmp = tempfile::tempdir().unwrap();
    let mut config = small_config(&tmp.path().join("o"));
    config.ref_scalars = vec![-0.2];
    gen(&config).unwrap();
    let a = bench(&config).unwrap();
    let b = bench(&config).unwrap();
    assert_eq!(a.len(), 2 * 4);
    for (x, y) in a.iter().zip(&b) {
        assert_eq!(x.value_sum, y.value_sum);
        assert_eq!(x.n_repeats, 2);
        assert!(x.min_total_s <= x.median_total_s && x.median_total_s <= x.max_total_s);
    }
    let text = std::fs::read_to_string(config.output_dir.join("bench.csv")).unwrap();
    assert!(text.starts_with("shape,m,N,r,method,budget,alpha,n_sets,n_repeats,median_total_s,min_total_s,max_total_s,value_sum\n"));
}

#[test]
fn config_flags_override_the_file() {
    let tmp = tempfile::tempdir().unwrap();
    let config = small_config(&tmp.path().join("o"));
    let cfg_path = write_config(tmp.path(), &config);
    let out = hvc()
        .args(["config", "--config", cfg_path.to_str().unwrap(), "--seed", "99", "--out", "elsewhere"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let effective: ExperimentConfig = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(effective.seed, 99);
    assert_eq!(effective.output_dir, PathBuf::from("elsewhere"));
    assert_eq!(effective.methods, config.methods);

    let out = hvc().args(["config", "--paper-scale"]).output().unwrap();
    let paper: ExperimentConfig = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(paper.dims, vec![5, 10]);
    assert_eq!(paper.n_runs, 30);
    assert_eq!(exit_code(&["run", "--paper-scale", "--out", tmp.path().join("p").to_str().unwrap()]), 4);

    let mut broken: serde_json::Value = serde_json::from_str(&config.to_json()).unwrap();
    broken["n_runs"] = serde_json::json!(0);
    std::fs::write(&cfg_path, broken.to_string()).unwrap();
    assert_eq!(exit_code(&["gen", "--config", cfg_path.to_str().unwrap()]), 2);
}
