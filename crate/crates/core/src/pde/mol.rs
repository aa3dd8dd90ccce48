use super::problem::ParabolicProblem;
use crate::backends::MatrixBackend;
use crate::error::{Error, Result};
use crate::expansion::{relative_errors, solve_operator, AdaptiveSolution, ExpansionConfig};
use crate::scalar::{real, Cplx, Real};

/// The method-of-lines system `u' = A_h u` on the interior nodes `x_i = i / (N + 1)`.
#[derive(Debug, Clone)]
pub struct Semidiscrete<T: Real> {
    pub backend: MatrixBackend<T>,
    pub x: Vec<T>,
    pub f: Vec<Cplx<T>>,
}

/// `A_h = diag(c(x_i)) + (sigma / h^2) tridiag(1, -2, 1)` and the sampled data.
pub fn semidiscretize<T: Real>(problem: &ParabolicProblem<T>, n: usize) -> Result<Semidiscrete<T>> {
    if n < 2 {
        return Err(Error::InvalidConfig(format!("semi-discretization needs N >= 2, got {n}")));
    }
    let h = T::one() / T::from_usize_lossy(n + 1);
    let s = problem.sigma / (h * h);
    let x: Vec<T> = (1..=n).map(|i| T::from_usize_lossy(i) * h).collect();
    let diag = x.iter().map(|&xi| problem.c.at(xi) - (s + s)).collect();
    let backend = MatrixBackend::tridiagonal(diag, s, problem.c.constant());
    let f = x.iter().map(|&xi| real(problem.f(xi))).collect();
    Ok(Semidiscrete { backend, x, f })
}

/// Adaptive expansion of the semi-discrete system, scored against the exact
/// solution sampled on the nodes.
#[derive(Debug, Clone)]
pub struct MolRun<T> {
    pub solution: AdaptiveSolution<T>,
    /// Relative error per fine-grid time.
    pub rel_errors: Vec<T>,
    pub err: T,
}

pub fn mol_solve<T: Real>(problem: &ParabolicProblem<T>, n: usize, config: &ExpansionConfig<T>) -> Result<MolRun<T>> {
    let exact = problem
        .exact
        .as_ref()
        .ok_or_else(|| Error::InvalidConfig(format!("problem '{}' has no exact solution", problem.name)))?;
    let sd = semidiscretize(problem, n)?;
    let solution = solve_operator(&sd.backend, &sd.f, config)?;
    let reference: Vec<Vec<Cplx<T>>> =
        solution.grid.fine().iter().map(|&t| sd.x.iter().map(|&x| real(exact(x, t))).collect()).collect();
    let rel_errors = relative_errors(&solution.fine_values, &reference, solution.grid.fine())?;
    let err = rel_errors.iter().copied().fold(T::zero(), T::max);
    Ok(MolRun { solution, rel_errors, err })
}
