//! The Bernoulli-polynomial/rational expansion of the solution and its adaptive
//! truncation.
//!
//! The solution of `v' = A v`, `(1/2pi) int_0^{2pi} v = f` is approximated by
//! `v_{n,ell}(t) = p_n(t) + (-1)^n 2 sum_{k<=ell} k^{-2n} (a_k cos kt + b_k sin kt)`
//! where `p_n` is a Bernoulli-polynomial combination of `g_j = A^j f` and the
//! vectors `a_k`, `b_k` come from the resolvent chain `V_k = (A^2 + k^2)^{-1}`.

mod adaptive;
mod chain;
mod config;
mod terms;

pub use adaptive::{
    adaptive_solve, adaptive_solve_cached, error_measure, relative_errors, AdaptiveSolution, DIVISION_GUARD,
};
pub use chain::{poly_part, poly_weights, DerivativeChain, PolynomialPart};
pub use config::{ExpansionConfig, FineRefine, GridPair, SeriesForm, DEFAULT_FINE_REFINE, DEFAULT_MAX_TERMS};
pub use terms::{
    build_terms, eval_partial_sum, series_weight, sigma_upsilon, OperatorTerms, Term, TermCache, TermSource,
};

use crate::error::Result;
use crate::operator::LinearOperator;
use crate::scalar::{Cplx, Real};

/// `g_0 .. g_order` by repeated application of `op`.
pub fn derivative_chain<T: Real>(
    op: &dyn LinearOperator<T>,
    f: &[Cplx<T>],
    order: usize,
) -> Result<DerivativeChain<T>> {
    DerivativeChain::from_operator(op, f, order)
}

/// `V_k g`.
pub fn resolvent_apply<T: Real>(op: &dyn LinearOperator<T>, k: usize, g: &[Cplx<T>]) -> Result<Vec<Cplx<T>>> {
    op.resolvent(k, g)
}

/// Builds chain, polynomial part and term source for `op` and runs the adaptive
/// truncation.
pub fn solve_operator<T: Real>(
    op: &dyn LinearOperator<T>,
    f: &[Cplx<T>],
    config: &ExpansionConfig<T>,
) -> Result<AdaptiveSolution<T>> {
    let chain = DerivativeChain::from_operator(op, f, config.series_form.chain_len(config.n) - 1)?;
    let poly = PolynomialPart::new(&chain, config.n)?;
    let terms = OperatorTerms::new(op, &chain, config.n, config.series_form)?;
    adaptive_solve(&terms, &poly, config)
}
