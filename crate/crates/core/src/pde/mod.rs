//! One-dimensional parabolic problems with an integral time condition: the
//! method-of-lines discretization and the functional path built on boundary
//! value solves.

mod functional;
mod mol;
mod problem;
mod surface;

pub use functional::{functional_adaptive, functional_solve, FunctionalSolution, FunctionalTerms};
pub use mol::{mol_solve, semidiscretize, MolRun, Semidiscrete};
pub use problem::{
    model_problem_1, model_problem_2, Coefficient, ParabolicProblem, ScalarFn, SineMode, SurfaceFn, MODEL_CHAIN_ORDER,
};
pub use surface::{pde_error_surface, uniform_points, ErrorSurface};

#[cfg(test)]
mod tests;
