use std::fmt;

use clap::ValueEnum;
use serde::Serialize;

use crate::report::RunReport;
use crate::run::run;
use crate::spec::{Experiment, ExperimentSpec};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Table {
    /// Model problem 1, `sigma = 1e-6`.
    Table1,
    /// Model problem 1, `sigma = 1e-2`.
    Table2,
}

/// `full` runs at `N = 1000, m = 100`; `desk` at `N = 200, m = 20`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scale {
    Full,
    Desk,
}

impl Table {
    pub fn sigma(self) -> f64 {
        match self {
            Table::Table1 => 1e-6,
            Table::Table2 => 1e-2,
        }
    }
}

impl Scale {
    pub fn mesh(self) -> (usize, usize) {
        match self {
            Scale::Full => (1000, 100),
            Scale::Desk => (200, 20),
        }
    }
}

/// The MOL run behind one column of a table.
pub fn table_spec(table: Table, scale: Scale, n: usize) -> ExperimentSpec {
    let (big_n, m) = scale.mesh();
    let mut spec = ExperimentSpec::defaults(Experiment::PdeMol);
    spec.sigma = table.sigma();
    spec.big_n = big_n;
    spec.m = m;
    spec.n = n;
    spec
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableRow {
    pub n: usize,
    pub ell_min: usize,
    pub ell_max: usize,
    pub err: Option<f64>,
    /// Set when the run failed or its error exceeds 1.
    pub failed: bool,
}

impl From<&RunReport> for TableRow {
    fn from(r: &RunReport) -> Self {
        Self { n: r.config.n, ell_min: r.ell_min(), ell_max: r.ell_max(), err: r.err, failed: r.failure.is_some() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableReport {
    pub table: Table,
    pub scale: Scale,
    pub rows: Vec<TableRow>,
}

pub fn table_repro(table: Table, scale: Scale) -> Result<TableReport, CliError> {
    let rows =
        (0..=2).map(|n| run(&table_spec(table, scale, n)).map(|r| TableRow::from(&r))).collect::<Result<_, _>>()?;
    Ok(TableReport { table, scale, rows })
}

impl fmt::Display for TableReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (big_n, m) = self.scale.mesh();
        writeln!(f, "sigma = {:e}, N = {big_n}, m = {m}", self.table.sigma())?;
        let line = |f: &mut fmt::Formatter<'_>, label: &str, cells: Vec<String>| {
            write!(f, "{label:<8}")?;
            for c in cells {
                write!(f, "{c:>12}")?;
            }
            writeln!(f)
        };
        line(f, "n", self.rows.iter().map(|r| r.n.to_string()).collect())?;
        line(f, "l_min", self.rows.iter().map(|r| r.ell_min.to_string()).collect())?;
        line(f, "l_max", self.rows.iter().map(|r| r.ell_max.to_string()).collect())?;
        line(
            f,
            "err",
            self.rows
                .iter()
                .map(|r| match (r.failed, r.err) {
                    (true, _) | (_, None) => "*".to_string(),
                    (false, Some(e)) => format!("{e:.1e}"),
                })
                .collect(),
        )
    }
}
