use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::spec::ExperimentSpec;
use crate::CliError;

/// One caught ill-conditioned shifted solve.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Warning {
    pub kind: &'static str,
    pub k: usize,
    pub pivot_ratio: f64,
    pub message: String,
}

/// Why a run ended with exit code 2.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Failure {
    pub kind: &'static str,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub config: ExperimentSpec,
    pub ell_hat: usize,
    pub ell_per_point: Vec<usize>,
    /// `None` when the run stopped before an error could be measured.
    pub err: Option<f64>,
    pub warnings: Vec<Warning>,
    pub wall_ms: u64,
    #[serde(skip)]
    pub curve: Vec<(f64, f64)>,
    #[serde(skip)]
    pub extra_curves: Vec<(String, Vec<(f64, f64)>)>,
    /// Further named files, written verbatim.
    #[serde(skip)]
    pub extra_files: Vec<(String, String)>,
    #[serde(skip)]
    pub failure: Option<Failure>,
}

impl RunReport {
    pub fn new(config: ExperimentSpec) -> Self {
        Self {
            config,
            ell_hat: 0,
            ell_per_point: Vec::new(),
            err: None,
            warnings: Vec::new(),
            wall_ms: 0,
            curve: Vec::new(),
            extra_curves: Vec::new(),
            extra_files: Vec::new(),
            failure: None,
        }
    }

    pub fn ell_min(&self) -> usize {
        self.ell_per_point.iter().copied().min().unwrap_or(0)
    }

    pub fn ell_max(&self) -> usize {
        self.ell_per_point.iter().copied().max().unwrap_or(0)
    }

    pub fn exit_code(&self) -> i32 {
        if self.failure.is_some() {
            2
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    /// Writes `errors.csv`, `summary.json`, extra curves and the optional plot.
    pub fn write_artifacts(&self, dir: &Path, svg: bool) -> Result<Vec<PathBuf>, CliError> {
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        let mut written = Vec::new();
        let mut put = |name: &str, body: String| -> Result<(), CliError> {
            let path = dir.join(name);
            fs::write(&path, body).map_err(|e| CliError::io(&path, e))?;
            written.push(path);
            Ok(())
        };
        put("errors.csv", curve_csv(&self.curve))?;
        for (name, curve) in &self.extra_curves {
            put(&format!("{name}.csv"), curve_csv(curve))?;
        }
        for (name, body) in &self.extra_files {
            put(name, body.clone())?;
        }
        put("summary.json", self.to_json())?;
        if svg {
            let mut series = vec![("expansion".to_string(), self.curve.as_slice())];
            series.extend(self.extra_curves.iter().map(|(n, c)| (n.clone(), c.as_slice())));
            put("errors.svg", crate::svg::log_plot(&series))?;
        }
        Ok(written)
    }
}

/// `t,rel_err` with shortest round-trip decimal formatting.
pub fn curve_csv(curve: &[(f64, f64)]) -> String {
    let mut out = String::from("t,rel_err\n");
    for (t, e) in curve {
        let _ = writeln!(out, "{t:?},{e:?}");
    }
    out
}
