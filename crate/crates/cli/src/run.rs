use std::f64::consts::TAU;
use std::fmt::Write as _;
use std::time::Instant;

use nonlocal_core::bvp::RefinePolicy;
use nonlocal_core::expansion::relative_errors;
use nonlocal_core::pde::{
    functional_adaptive, functional_solve, model_problem_1, model_problem_2, mol_solve, uniform_points,
    ParabolicProblem,
};
use nonlocal_core::{solve_operator, Backend64, Complex64, Error, Solution64};

use crate::report::{Failure, RunReport, Warning};
use crate::spec::{Experiment, ExperimentSpec, ModelProblem};
use crate::CliError;

/// Runs `spec` on a pool capped at `spec.workers` threads. Numerical failures
/// are recorded in the report; only invalid specs are returned as errors.
pub fn run(spec: &ExperimentSpec) -> Result<RunReport, CliError> {
    spec.validate()?;
    let start = Instant::now();
    let mut report = match spec.workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .map_err(|e| CliError::InvalidSpec(format!("cannot start {w} workers: {e}")))?
            .install(|| execute(spec)),
        None => execute(spec),
    }?;
    report.wall_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

fn execute(spec: &ExperimentSpec) -> Result<RunReport, CliError> {
    let mut report = RunReport::new(spec.clone());
    let outcome = match spec.experiment {
        Experiment::Hessenberg => {
            let seed = spec.seed.expect("validated");
            Backend64::unitary_hessenberg(spec.big_n, seed).and_then(|b| run_backend(spec, &b, &mut report))
        }
        Experiment::Circulant => circulant(spec).and_then(|b| run_backend(spec, &b, &mut report)),
        Experiment::Laplacian => {
            Backend64::laplacian(spec.big_n, spec.sigma, spec.gamma).and_then(|b| run_backend(spec, &b, &mut report))
        }
        Experiment::PowerCompare => circulant(spec).and_then(|b| {
            run_backend(spec, &b, &mut report)?;
            power_curve(spec, &b, &mut report)
        }),
        Experiment::PdeMol => problem(spec).and_then(|p| run_mol(spec, &p, &mut report)),
        Experiment::PdeFunctional => problem(spec).and_then(|p| run_functional(spec, &p, &mut report)),
    };
    if let Err(e) = outcome {
        record_failure(&mut report, e)?;
    }
    if report.failure.is_none() {
        if let Some(err) = report.err.filter(|e| e.is_nan() || *e > 1.0) {
            report.failure =
                Some(Failure { kind: "error-above-one", message: format!("computed error {err:e} is larger than 1") });
        }
    }
    Ok(report)
}

fn record_failure(report: &mut RunReport, e: Error) -> Result<(), CliError> {
    let kind = match &e {
        Error::InvalidConfig(_) | Error::DimensionMismatch { .. } => return Err(CliError::InvalidSpec(e.to_string())),
        Error::IllConditionedResolvent { k, ratio } => {
            report.warnings.push(Warning {
                kind: "ill-conditioned-resolvent",
                k: *k,
                pivot_ratio: *ratio,
                message: e.to_string(),
            });
            "ill-conditioning"
        }
        Error::TermBudgetExhausted { .. } => "term-budget",
        Error::IllConditionedBvp { .. } => "ill-conditioned-bvp",
        Error::MeshBudget { .. } => "mesh-budget",
        Error::NearPole { .. } => "near-pole",
        Error::DivisionGuard { .. } => "division-guard",
        Error::DegreeOverflow { .. } => "degree-overflow",
    };
    report.failure = Some(Failure { kind, message: e.to_string() });
    Ok(())
}

fn circulant(spec: &ExperimentSpec) -> nonlocal_core::Result<Backend64> {
    let [a0, a1, a2] = spec.a;
    Backend64::circulant(spec.big_n, a0, a1, a2)
}

fn problem(spec: &ExperimentSpec) -> nonlocal_core::Result<ParabolicProblem<f64>> {
    match spec.problem {
        ModelProblem::One => model_problem_1(spec.sigma),
        ModelProblem::Two => model_problem_2(),
    }
}

fn ones(n: usize) -> Vec<Complex64> {
    vec![Complex64::new(1.0, 0.0); n]
}

fn record_solution(report: &mut RunReport, sol: &Solution64, rel: Vec<f64>) {
    report.ell_hat = sol.ell_hat;
    report.ell_per_point = sol.ell_per_point.clone();
    report.err = Some(rel.iter().copied().fold(0.0, f64::max));
    report.curve = sol.grid.fine().iter().copied().zip(rel).collect();
}

fn run_backend(spec: &ExperimentSpec, backend: &Backend64, report: &mut RunReport) -> nonlocal_core::Result<()> {
    let f = ones(backend.operator().dim());
    let sol = solve_operator(backend, &f, &spec.expansion_config())?;
    let model = backend.spectral().expect("matrix backends carry a spectral model");
    let reference = model.reference(&f)?;
    let exact = sol.grid.fine().iter().map(|&t| reference.eval(t)).collect::<nonlocal_core::Result<Vec<_>>>()?;
    let rel = relative_errors(&sol.fine_values, &exact, sol.grid.fine())?;
    record_solution(report, &sol, rel);
    Ok(())
}

/// Error of `v(t_{i+1}) = B v(t_i)` against the closed form on the same fine grid.
fn power_curve(spec: &ExperimentSpec, backend: &Backend64, report: &mut RunReport) -> nonlocal_core::Result<()> {
    let f = ones(backend.operator().dim());
    let grid = spec.expansion_config().grid();
    let times = grid.fine();
    let model = backend.spectral().expect("circulant has a spectral model");
    let step = TAU / grid.fine_intervals() as f64;
    let propagated = model.propagate_reference(&f, step, times.len())?;
    let reference = model.reference(&f)?;
    let exact = times.iter().map(|&t| reference.eval(t)).collect::<nonlocal_core::Result<Vec<_>>>()?;
    let rel = relative_errors(&propagated, &exact, times)?;
    report.extra_curves.push(("power".into(), times.iter().copied().zip(rel).collect()));
    Ok(())
}

fn run_mol(
    spec: &ExperimentSpec,
    problem: &ParabolicProblem<f64>,
    report: &mut RunReport,
) -> nonlocal_core::Result<()> {
    let run = mol_solve(problem, spec.big_n, &spec.expansion_config())?;
    record_solution(report, &run.solution, run.rel_errors);
    Ok(())
}

fn policy(spec: &ExperimentSpec) -> nonlocal_core::Result<RefinePolicy<f64>> {
    RefinePolicy::new(spec.bvp_mesh, spec.bvp_tol)
}

fn run_functional(
    spec: &ExperimentSpec,
    problem: &ParabolicProblem<f64>,
    report: &mut RunReport,
) -> nonlocal_core::Result<()> {
    let exact = problem.exact.clone().expect("built-in problems have exact solutions");
    let xs = uniform_points(0.0, 1.0, spec.big_n);
    match spec.ell {
        Some(ell) => {
            let sol = functional_solve(problem, spec.n, ell, &policy(spec)?)?;
            let ts = uniform_points(0.0, TAU, spec.m);
            let mut surface = String::from("x,t,abs_err\n");
            let mut curve = Vec::with_capacity(ts.len());
            for &t in &ts {
                let (mut diff, mut peak) = (0.0f64, 0.0f64);
                for &x in &xs {
                    let u = exact(x, t);
                    let e = (sol.eval(x, t) - Complex64::new(u, 0.0)).norm();
                    let _ = writeln!(surface, "{x:?},{t:?},{e:?}");
                    diff = diff.max(e);
                    peak = peak.max(u.abs());
                }
                if peak < nonlocal_core::expansion::DIVISION_GUARD {
                    return Err(Error::DivisionGuard { t });
                }
                curve.push((t, diff / peak));
            }
            report.ell_hat = ell;
            report.ell_per_point = vec![ell; ts.len()];
            report.err = Some(curve.iter().map(|c| c.1).fold(0.0, f64::max));
            report.curve = curve;
            report.extra_files.push(("surface.csv".into(), surface));
        }
        None => {
            let sol = functional_adaptive(problem, &spec.expansion_config(), xs.clone(), policy(spec)?)?;
            let reference: Vec<Vec<Complex64>> = sol
                .grid
                .fine()
                .iter()
                .map(|&t| xs.iter().map(|&x| Complex64::new(exact(x, t), 0.0)).collect())
                .collect();
            let rel = relative_errors(&sol.fine_values, &reference, sol.grid.fine())?;
            record_solution(report, &sol, rel);
        }
    }
    Ok(())
}
