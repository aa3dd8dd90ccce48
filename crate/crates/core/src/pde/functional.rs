use rayon::prelude::*;

use super::problem::{ParabolicProblem, ScalarFn};
use crate::bvp::{functional_resolvent, GridFunction, RefinePolicy};
use crate::error::Result;
use crate::expansion::{
    adaptive_solve, poly_weights, series_weight, AdaptiveSolution, DerivativeChain, ExpansionConfig, PolynomialPart,
    SeriesForm, Term, TermSource,
};
use crate::scalar::{real, Cplx, Real};
use crate::special::BernoulliTable;

/// `a_k = V_k g_{2n+2}` and `b_k = V_k g_{2n+3} / k` as grid functions.
fn functional_term<T: Real>(
    problem: &ParabolicProblem<T>,
    n: usize,
    k: usize,
    policy: &RefinePolicy<T>,
) -> Result<(GridFunction<T>, GridFunction<T>)> {
    let c = |x: T| problem.c.at(x);
    let lift = |f: &ScalarFn<T>| {
        let f = f.clone();
        move |x: T| real(f(x))
    };
    let g_a = lift(&problem.chain[2 * n + 2]);
    let g_b = lift(&problem.chain[2 * n + 3]);
    let a = functional_resolvent(k, &g_a, problem.sigma, &c, policy)?.solution;
    let b = functional_resolvent(k, &g_b, problem.sigma, &c, policy)?.solution;
    let inv_k = T::one() / T::from_usize_lossy(k);
    let b = GridFunction::new(b.mesh(), b.values().iter().map(|&z| z * inv_k).collect())?;
    Ok((a, b))
}

/// `v_{n,ell}(x, t)` with the closed-form polynomial part and BVP-computed
/// rational terms, interpolated linearly in `x`.
#[derive(Clone)]
pub struct FunctionalSolution<T: Real> {
    n: usize,
    chain: Vec<ScalarFn<T>>,
    table: BernoulliTable<T>,
    terms: Vec<(GridFunction<T>, GridFunction<T>)>,
}

impl<T: Real> std::fmt::Debug for FunctionalSolution<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FunctionalSolution").field("n", &self.n).field("ell", &self.terms.len()).finish()
    }
}

impl<T: Real> FunctionalSolution<T> {
    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn ell(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> &[(GridFunction<T>, GridFunction<T>)] {
        &self.terms
    }

    pub fn eval(&self, x: T, t: T) -> Cplx<T> {
        let w = poly_weights(&self.table, self.n, t).expect("table sized for n");
        let mut v = real(w.iter().zip(&self.chain).fold(T::zero(), |acc, (&wj, g)| acc + wj * g(x)));
        for (i, (a, b)) in self.terms.iter().enumerate() {
            let k = i + 1;
            let kt = T::from_usize_lossy(k) * t;
            let wk = series_weight::<T>(self.n, k);
            v = v + (a.eval(x) * kt.cos() + b.eval(x) * kt.sin()) * wk;
        }
        v
    }
}

/// Builds the functional expansion with `ell` terms fixed in advance.
pub fn functional_solve<T: Real>(
    problem: &ParabolicProblem<T>,
    n: usize,
    ell: usize,
    policy: &RefinePolicy<T>,
) -> Result<FunctionalSolution<T>> {
    problem.require_order(2 * n + 3)?;
    let results: Vec<Result<(GridFunction<T>, GridFunction<T>)>> =
        (1..=ell).into_par_iter().map(|k| functional_term(problem, n, k, policy)).collect();
    let terms = results.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(FunctionalSolution {
        n,
        chain: problem.chain[..2 * n + 2].to_vec(),
        table: BernoulliTable::new(2 * n + 1),
        terms,
    })
}

/// Rational terms sampled on a fixed evaluation mesh, for the adaptive mode.
pub struct FunctionalTerms<'a, T: Real> {
    problem: &'a ParabolicProblem<T>,
    n: usize,
    policy: RefinePolicy<T>,
    xs: Vec<T>,
}

impl<'a, T: Real> FunctionalTerms<'a, T> {
    pub fn new(problem: &'a ParabolicProblem<T>, n: usize, policy: RefinePolicy<T>, xs: Vec<T>) -> Result<Self> {
        problem.require_order(2 * n + 3)?;
        Ok(Self { problem, n, policy, xs })
    }
}

impl<T: Real> TermSource<T> for FunctionalTerms<'_, T> {
    fn dim(&self) -> usize {
        self.xs.len()
    }

    fn term(&self, k: usize) -> Result<Term<T>> {
        let (a, b) = functional_term(self.problem, self.n, k, &self.policy)?;
        Ok(Term { a: a.sample(&self.xs), b: b.sample(&self.xs) })
    }
}

/// Adaptive truncation of the functional path, with the
/// stopping test taken in the sup-norm over `xs`.
pub fn functional_adaptive<T: Real>(
    problem: &ParabolicProblem<T>,
    config: &ExpansionConfig<T>,
    xs: Vec<T>,
    policy: RefinePolicy<T>,
) -> Result<AdaptiveSolution<T>> {
    let n = config.n;
    problem.require_order(2 * n + 3)?;
    let sampled = problem.chain[..2 * n + 2].iter().map(|g| xs.iter().map(|&x| real(g(x))).collect()).collect();
    let poly = PolynomialPart::new(&DerivativeChain::from_vectors(sampled)?, n)?;
    let source = FunctionalTerms::new(problem, n, policy, xs)?;
    let config = config.clone().with_form(SeriesForm::DerivativeChain);
    adaptive_solve(&source, &poly, &config)
}
