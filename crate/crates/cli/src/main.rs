use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use nonlocal_cli::{run, table_repro, CliError, Experiment, ExperimentSpec, FineRefineArg, ModelProblem, Scale, Table};

/// Solve v' = A v with the mean-value condition (1/2pi) int v dt = f by the
/// mixed Bernoulli/rational expansion and report the measured error.
#[derive(Debug, Parser)]
#[command(name = "nonlocal", version)]
struct Args {
    #[arg(long, value_enum, required_unless_present = "table")]
    experiment: Option<Experiment>,
    /// Reproduce a PDE table instead of running a single experiment.
    #[arg(long, value_enum, conflicts_with = "experiment")]
    table: Option<Table>,
    #[arg(long, value_enum, default_value = "full")]
    scale: Scale,

    /// Bernoulli degree, 0..=4.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    tol: Option<f64>,
    /// Matrix size, or number of interior nodes for the PDE experiments.
    #[arg(long = "N")]
    big_n: Option<usize>,
    /// Coarse time grid size.
    #[arg(long)]
    m: Option<usize>,
    /// Fine points per coarse interval, or `squared` for (m-1)^2 fine intervals.
    #[arg(long)]
    fine_refine: Option<FineRefineArg>,
    #[arg(long)]
    sigma: Option<f64>,
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    a0: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    a1: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    a2: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Built-in parabolic problem for the PDE experiments.
    #[arg(long, value_enum)]
    problem: Option<ModelProblem>,
    /// Fixed number of rational terms on the functional path; adaptive if omitted.
    #[arg(long)]
    ell: Option<usize>,
    /// Mesh refinement tolerance of the boundary value solves.
    #[arg(long)]
    bvp_tol: Option<f64>,
    /// Initial interior mesh size of the boundary value solves.
    #[arg(long)]
    bvp_mesh: Option<usize>,
    #[arg(long)]
    max_terms: Option<usize>,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Also write errors.svg.
    #[arg(long)]
    svg: bool,
}

impl Args {
    fn spec(&self, experiment: Experiment) -> ExperimentSpec {
        let mut s = ExperimentSpec::defaults(experiment);
        macro_rules! take {
            ($($field:ident => $target:expr),* $(,)?) => {
                $(if let Some(v) = self.$field { $target = v; })*
            };
        }
        take!(n => s.n, tol => s.tol, big_n => s.big_n, m => s.m, fine_refine => s.fine_refine,
              sigma => s.sigma, gamma => s.gamma, a0 => s.a[0], a1 => s.a[1], a2 => s.a[2],
              problem => s.problem, bvp_tol => s.bvp_tol, bvp_mesh => s.bvp_mesh, max_terms => s.max_terms);
        if self.seed.is_some() {
            s.seed = self.seed;
        }
        if self.ell.is_some() {
            s.ell = self.ell;
        }
        s.workers = self.workers;
        s.out_dir = self.out_dir.clone();
        s.svg = self.svg;
        s
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let code = match (&args.table, args.experiment) {
        (Some(table), _) => match table_repro(*table, args.scale) {
            Ok(t) => {
                print!("{t}");
                0
            }
            Err(e) => fail(&e),
        },
        (None, Some(experiment)) => single(&args.spec(experiment)),
        (None, None) => unreachable!("clap requires --experiment or --table"),
    };
    ExitCode::from(code as u8)
}

fn single(spec: &ExperimentSpec) -> i32 {
    let report = match run(spec) {
        Ok(r) => r,
        Err(e) => return fail(&e),
    };
    if let Some(dir) = &spec.out_dir {
        if let Err(e) = report.write_artifacts(dir, spec.svg) {
            return fail(&e);
        }
    }
    print!("{}", report.to_json());
    for w in &report.warnings {
        eprintln!("warning: {}", w.message);
    }
    if let Some(f) = &report.failure {
        eprintln!("failed ({}): {}", f.kind, f.message);
    }
    report.exit_code()
}

fn fail(e: &CliError) -> i32 {
    eprintln!("error: {e}");
    e.exit_code()
}
