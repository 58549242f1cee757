//! Experiment grid configuration, read from a single JSON document.

use std::collections::HashSet;
use std::path::{Path, PathBuf};

use hvc_core::{Method, PfShape};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

/// One estimator setting on the grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MethodSpec {
    pub name: Method,
    /// Directions or samples; ignored (and recorded as 0) for exact.
    #[serde(default)]
    pub budget: usize,
    /// Only meaningful for r2hvc: 1 or m. Absent means m.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<u32>,
}

impl MethodSpec {
    pub fn new(name: Method, budget: usize) -> Self {
        MethodSpec {
            name,
            budget,
            alpha: None,
        }
    }

    pub fn exact() -> Self {
        MethodSpec::new(Method::Exact, 0)
    }

    /// Effective budget as written to output files.
    pub fn budget(&self) -> usize {
        if self.name == Method::Exact {
            0
        } else {
            self.budget
        }
    }

    /// Effective exponent for dimension `m`.
    pub fn alpha_for(&self, m: usize) -> Option<u32> {
        (self.name == Method::R2Hvc).then(|| self.alpha.unwrap_or(m as u32))
    }

    /// Method name, with `-a1` appended for the alpha = 1 variant of r2hvc.
    pub fn label(&self, m: usize) -> String {
        match self.alpha_for(m) {
            Some(a) if a as usize != m => format!("{}-a{a}", self.name),
            _ => self.name.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub shapes: Vec<PfShape>,
    pub dims: Vec<usize>,
    pub set_sizes: Vec<usize>,
    pub n_sets: usize,
    pub ref_scalars: Vec<f64>,
    pub methods: Vec<MethodSpec>,
    pub n_runs: usize,
    pub seed: u64,
    pub output_dir: PathBuf,
}

const DESK_BUDGETS: [usize; 2] = [100, 500];
const REF_SCALARS: [f64; 5] = [0.0, -0.1, -0.2, -0.3, -0.4];

fn approximations(budgets: &[usize]) -> Vec<MethodSpec> {
    let mut methods = Vec::new();
    for name in [Method::R2Hvc, Method::R2Contribution, Method::MonteCarlo] {
        methods.extend(budgets.iter().map(|&b| MethodSpec::new(name, b)));
    }
    methods
}

impl ExperimentConfig {
    /// Desk-scale grid: m = 3, N = 20, 30 sets, 10 runs.
    pub fn desk() -> Self {
        let mut methods = approximations(&DESK_BUDGETS);
        methods.push(MethodSpec::exact());
        ExperimentConfig {
            shapes: PfShape::ALL.to_vec(),
            dims: vec![3],
            set_sizes: vec![20],
            n_sets: 30,
            ref_scalars: REF_SCALARS.to_vec(),
            methods,
            n_runs: 10,
            seed: 2024,
            output_dir: PathBuf::from("hvc-out"),
        }
    }

    /// Full grid: m in {5, 10}, N = 100..500, 100 sets, 30 runs, budgets
    /// 100..1000. The exact engine only covers the dimensions it supports,
    /// so m = 10 runs need it removed or handled separately.
    pub fn paper_scale() -> Self {
        let budgets: Vec<usize> = (1..=10).map(|k| k * 100).collect();
        let mut methods = approximations(&budgets);
        methods.push(MethodSpec::exact());
        ExperimentConfig {
            shapes: PfShape::ALL.to_vec(),
            dims: vec![5, 10],
            set_sizes: vec![100, 200, 300, 400, 500],
            n_sets: 100,
            ref_scalars: REF_SCALARS.to_vec(),
            methods,
            n_runs: 30,
            seed: 2024,
            output_dir: PathBuf::from("hvc-out"),
        }
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::io(format!("reading config {}", path.display()), e))?;
        let config: ExperimentConfig = serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(CliError::Config(msg));
        for (name, len) in [
            ("shapes", self.shapes.len()),
            ("dims", self.dims.len()),
            ("set_sizes", self.set_sizes.len()),
            ("ref_scalars", self.ref_scalars.len()),
            ("methods", self.methods.len()),
        ] {
            if len == 0 {
                return bad(format!("{name} must not be empty"));
            }
        }
        if self.n_sets < 1 {
            return bad("n_sets must be at least 1".into());
        }
        if self.n_runs < 1 {
            return bad("n_runs must be at least 1".into());
        }
        if let Some(m) = self.dims.iter().find(|&&m| m < 2) {
            return bad(format!("dims must be at least 2, got {m}"));
        }
        if let Some(n) = self.set_sizes.iter().find(|&&n| n < 2) {
            return bad(format!("set_sizes must be at least 2, got {n}"));
        }
        if let Some(r) = self.ref_scalars.iter().find(|r| !r.is_finite()) {
            return bad(format!("ref_scalars must be finite, got {r}"));
        }
        let mut seen = HashSet::new();
        for spec in &self.methods {
            if spec.name != Method::Exact && spec.budget < 1 {
                return bad(format!("{} needs a budget of at least 1", spec.name));
            }
            match (spec.name, spec.alpha) {
                (_, None) => {}
                (Method::R2Hvc, Some(1)) => {}
                (Method::R2Hvc, Some(a)) if self.dims.iter().all(|&m| m == a as usize) => {}
                (Method::R2Hvc, Some(a)) => {
                    return bad(format!("r2hvc alpha must be 1 or m, got {a}"));
                }
                (name, Some(_)) => return bad(format!("alpha does not apply to {name}")),
            }
            let key = (spec.name, spec.budget(), spec.alpha_for(self.dims[0]) == Some(1));
            if !seen.insert(key) {
                return bad(format!("duplicate method {} with budget {}", spec.name, spec.budget()));
            }
        }
        let mut unique = HashSet::new();
        for (name, ok) in [
            ("shapes", self.shapes.iter().all(|s| unique.insert(("s", *s as usize)))),
            ("dims", self.dims.iter().all(|&m| unique.insert(("m", m)))),
            ("set_sizes", self.set_sizes.iter().all(|&n| unique.insert(("n", n)))),
            ("ref_scalars", {
                let mut bits = HashSet::new();
                self.ref_scalars.iter().all(|r| bits.insert((r + 0.0).to_bits()))
            }),
        ] {
            if !ok {
                return bad(format!("{name} contains duplicates"));
            }
        }
        Ok(())
    }

    pub fn has_exact(&self) -> bool {
        self.methods.iter().any(|s| s.name == Method::Exact)
    }

    pub fn approximation_methods(&self) -> impl Iterator<Item = &MethodSpec> {
        self.methods.iter().filter(|s| s.name != Method::Exact)
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("config serializes");
        text.push('\n');
        text
    }
}
