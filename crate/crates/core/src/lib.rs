//! Mixed Bernoulli-polynomial/rational expansions for linear evolution
//! equations `v' = A v` whose time condition is the mean over one period,
//! `(1/2pi) int_0^{2pi} v(t) dt = f`.
//!
//! The engine works on any [`LinearOperator`] that can solve shifted systems,
//! and on the differential operator `sigma d^2/dx^2 + c(x)` through boundary
//! value solves. Everything is generic over [`Real`] (`f32` or `f64`).

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod backends;
pub mod bvp;
pub mod error;
pub mod expansion;
pub mod linalg;
pub mod operator;
pub mod pde;
pub mod scalar;
pub mod special;

pub use backends::MatrixBackend;
pub use error::{Error, Result};
pub use expansion::{adaptive_solve, solve_operator, AdaptiveSolution, ExpansionConfig, SeriesForm};
pub use operator::LinearOperator;
pub use scalar::{Cplx, Real};

pub type Complex64 = Cplx<f64>;
pub type Complex32 = Cplx<f32>;
pub type Backend64 = MatrixBackend<f64>;
pub type Backend32 = MatrixBackend<f32>;
pub type Config64 = ExpansionConfig<f64>;
pub type Config32 = ExpansionConfig<f32>;
pub type Solution64 = AdaptiveSolution<f64>;
pub type Solution32 = AdaptiveSolution<f32>;
pub type Problem64 = pde::ParabolicProblem<f64>;
