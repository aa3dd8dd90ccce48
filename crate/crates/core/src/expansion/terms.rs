use rayon::prelude::*;

use super::chain::{DerivativeChain, PolynomialPart};
use super::config::SeriesForm;
use crate::error::Result;
use crate::operator::LinearOperator;
use crate::scalar::{Cplx, Real};

/// `(Sigma_k h, Upsilon_k h) = (A V_k h, A^2 V_k h / k)`.
pub fn sigma_upsilon<T: Real>(op: &dyn LinearOperator<T>, k: usize, h: &[Cplx<T>]) -> Result<Term<T>> {
    let w = op.resolvent(k, h)?;
    let sigma = op.apply(&w);
    let inv_k = T::one() / T::from_usize_lossy(k);
    let upsilon = op.apply(&sigma).into_iter().map(|z| z * inv_k).collect();
    Ok(Term { a: sigma, b: upsilon })
}

/// The cosine and sine vectors of one rational term.
#[derive(Debug, Clone, PartialEq)]
pub struct Term<T> {
    pub a: Vec<Cplx<T>>,
    pub b: Vec<Cplx<T>>,
}

/// Anything able to produce the `k`-th term. Terms for distinct `k` are computed
/// concurrently, so implementors must be `Sync`.
pub trait TermSource<T: Real>: Sync {
    fn dim(&self) -> usize;
    fn term(&self, k: usize) -> Result<Term<T>>;
}

/// Terms of an operator expansion in either series form.
pub struct OperatorTerms<'a, T: Real> {
    op: &'a dyn LinearOperator<T>,
    form: SeriesForm,
    first: Vec<Cplx<T>>,
    second: Option<Vec<Cplx<T>>>,
}

impl<'a, T: Real> OperatorTerms<'a, T> {
    pub fn new(op: &'a dyn LinearOperator<T>, chain: &DerivativeChain<T>, n: usize, form: SeriesForm) -> Result<Self> {
        chain.require(form.chain_len(n))?;
        let at = |j: usize| chain.get(j).expect("length checked").to_vec();
        let (first, second) = match form {
            SeriesForm::OperatorApply => (at(2 * n + 1), None),
            SeriesForm::DerivativeChain => (at(2 * n + 2), Some(at(2 * n + 3))),
        };
        Ok(Self { op, form, first, second })
    }

    pub fn form(&self) -> SeriesForm {
        self.form
    }
}

impl<T: Real> TermSource<T> for OperatorTerms<'_, T> {
    fn dim(&self) -> usize {
        self.op.dim()
    }

    fn term(&self, k: usize) -> Result<Term<T>> {
        match &self.second {
            None => {
                let Term { a, b } = sigma_upsilon(self.op, k, &self.first)?;
                Ok(Term { a, b })
            }
            Some(second) => {
                let a = self.op.resolvent(k, &self.first)?;
                let inv_k = T::one() / T::from_usize_lossy(k);
                let b = self.op.resolvent(k, second)?.into_iter().map(|z| z * inv_k).collect();
                Ok(Term { a, b })
            }
        }
    }
}

/// Computes terms `from..=to` concurrently. The result holds the terms in order
/// up to (excluding) the first failing index, plus that failure if any.
pub fn build_terms<T: Real, S: TermSource<T> + ?Sized>(
    source: &S,
    from: usize,
    to: usize,
) -> (Vec<Term<T>>, Option<(usize, crate::error::Error)>) {
    let results: Vec<Result<Term<T>>> = (from..=to).into_par_iter().map(|k| source.term(k)).collect();
    let mut terms = Vec::with_capacity(results.len());
    for (k, r) in (from..=to).zip(results) {
        match r {
            Ok(t) => terms.push(t),
            Err(e) => return (terms, Some((k, e))),
        }
    }
    (terms, None)
}

/// `(-1)^n 2 k^{-2n}`.
pub fn series_weight<T: Real>(n: usize, k: usize) -> T {
    let inv = T::one() / T::from_usize_lossy(k);
    let mut w = T::lit(2.0);
    for _ in 0..2 * n {
        w = w * inv;
    }
    if n % 2 == 1 {
        -w
    } else {
        w
    }
}

/// Terms `1..=len` for a fixed degree `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct TermCache<T> {
    n: usize,
    terms: Vec<Term<T>>,
}

impl<T: Real> TermCache<T> {
    pub fn new(n: usize) -> Self {
        Self { n, terms: Vec::new() }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Term `k`, 1-based.
    pub fn term(&self, k: usize) -> Option<&Term<T>> {
        k.checked_sub(1).and_then(|i| self.terms.get(i))
    }

    pub fn terms(&self) -> &[Term<T>] {
        &self.terms
    }

    pub fn push(&mut self, term: Term<T>) {
        self.terms.push(term);
    }

    pub fn truncate(&mut self, len: usize) {
        self.terms.truncate(len);
    }

    /// Appends terms until the cache holds `len` of them.
    pub fn extend_to<S: TermSource<T> + ?Sized>(&mut self, source: &S, len: usize) -> Result<()> {
        if len <= self.len() {
            return Ok(());
        }
        let (terms, err) = build_terms(source, self.len() + 1, len);
        self.terms.extend(terms);
        match err {
            Some((_, e)) => Err(e),
            None => Ok(()),
        }
    }

    /// `(-1)^n 2 sum_{k<=ell} k^{-2n} (a_k cos kt + b_k sin kt)`.
    pub fn series(&self, ell: usize, t: T) -> Vec<Cplx<T>> {
        assert!(ell <= self.len(), "partial sum length {ell} exceeds cache length {}", self.len());
        let dim = self.terms.first().map_or(0, |t| t.a.len());
        let mut out = vec![Cplx::new(T::zero(), T::zero()); dim];
        for (i, term) in self.terms[..ell].iter().enumerate() {
            let k = i + 1;
            let w = series_weight::<T>(self.n, k);
            let kt = T::from_usize_lossy(k) * t;
            let (c, s) = (w * kt.cos(), w * kt.sin());
            for ((o, &a), &b) in out.iter_mut().zip(&term.a).zip(&term.b) {
                *o = *o + a * c + b * s;
            }
        }
        out
    }
}

/// `v_{n,ell}(t) = p_n(t) + s_{n,ell}(t)`.
pub fn eval_partial_sum<T: Real>(cache: &TermCache<T>, poly: &PolynomialPart<T>, ell: usize, t: T) -> Vec<Cplx<T>> {
    let mut v = poly.eval(t);
    if ell > 0 {
        for (o, s) in v.iter_mut().zip(cache.series(ell, t)) {
            *o = *o + s;
        }
    }
    v
}
