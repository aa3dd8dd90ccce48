//! Experiment runner for the expansion solvers: matrix test families, the
//! propagation comparison and both discretizations of the parabolic model
//! problems. Each run produces a [`RunReport`] plus CSV, JSON and SVG files.

mod report;
mod run;
mod spec;
mod svg;
mod table;

use std::path::{Path, PathBuf};

pub use report::{curve_csv, Failure, RunReport, Warning};
pub use run::run;
pub use spec::{Experiment, ExperimentSpec, FineRefineArg, ModelProblem};
pub use svg::log_plot;
pub use table::{table_repro, table_spec, Scale, Table, TableReport, TableRow};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid experiment spec: {0}")]
    InvalidSpec(String),
    #[error("cannot write {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub(crate) fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io { path: path.to_path_buf(), source }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::InvalidSpec(_) => 1,
            CliError::Io { .. } => 2,
        }
    }
}
