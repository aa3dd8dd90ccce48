use rayon::prelude::*;
use rustfft::FftPlanner;

use super::chain::PolynomialPart;
use super::config::{ExpansionConfig, GridPair};
use super::terms::{build_terms, series_weight, Term, TermCache, TermSource};
use crate::error::{Error, Result};
use crate::linalg::{norm_inf, norm_inf_diff};
use crate::scalar::{Cplx, Real};

/// Below this norm the stopping test compares absolute differences.
pub const DIVISION_GUARD: f64 = 1e-300;

const FIRST_BATCH: usize = 4;
const MAX_BATCH: usize = 512;
/// Above this many occupied buckets the fine grid is evaluated by FFT.
const DIRECT_BUCKETS: usize = 64;

/// Outcome of the adaptive truncation.
#[derive(Debug, Clone)]
pub struct AdaptiveSolution<T> {
    pub ell_hat: usize,
    /// Minimal `ell_i` per coarse point.
    pub ell_per_point: Vec<usize>,
    pub grid: GridPair<T>,
    /// `v_{n, ell_hat}` on the fine grid.
    pub fine_values: Vec<Vec<Cplx<T>>>,
    /// Present when the config asks to retain terms.
    pub cache: Option<TermCache<T>>,
}

impl<T: Real> AdaptiveSolution<T> {
    pub fn ell_min(&self) -> usize {
        self.ell_per_point.iter().copied().min().unwrap_or(0)
    }
}

/// Runs the adaptive truncation with a fresh term cache.
pub fn adaptive_solve<T: Real, S: TermSource<T> + ?Sized>(
    source: &S,
    poly: &PolynomialPart<T>,
    config: &ExpansionConfig<T>,
) -> Result<AdaptiveSolution<T>> {
    if config.retain_terms {
        let mut cache = TermCache::new(config.n);
        let mut sol = run(source, poly, config, Some(&mut cache))?;
        sol.cache = Some(cache);
        Ok(sol)
    } else {
        run(source, poly, config, None)
    }
}

/// Runs the adaptive truncation, consuming terms already in `cache` before
/// computing new ones and appending every newly consumed term to it.
pub fn adaptive_solve_cached<T: Real, S: TermSource<T> + ?Sized>(
    source: &S,
    poly: &PolynomialPart<T>,
    config: &ExpansionConfig<T>,
    cache: &mut TermCache<T>,
) -> Result<AdaptiveSolution<T>> {
    if cache.degree() != config.n {
        return Err(Error::InvalidConfig(format!(
            "cache built for n = {}, config has n = {}",
            cache.degree(),
            config.n
        )));
    }
    run(source, poly, config, Some(cache))
}

fn run<T: Real, S: TermSource<T> + ?Sized>(
    source: &S,
    poly: &PolynomialPart<T>,
    config: &ExpansionConfig<T>,
    mut cache: Option<&mut TermCache<T>>,
) -> Result<AdaptiveSolution<T>> {
    config.validate()?;
    if poly.degree() != config.n {
        return Err(Error::InvalidConfig(format!(
            "polynomial part has degree {}, config has n = {}",
            poly.degree(),
            config.n
        )));
    }
    if poly.dim() != source.dim() {
        return Err(Error::DimensionMismatch { expected: poly.dim(), got: source.dim() });
    }
    let grid = config.grid();
    let mut state = Lockstep::new(poly, config, &grid);

    let mut k = 1;
    let mut batch = FIRST_BATCH;
    let ell_hat = 'outer: loop {
        if k > config.max_terms {
            let point = state.first_active().expect("loop runs only while points are active");
            return Err(Error::TermBudgetExhausted {
                max_terms: config.max_terms,
                point,
                t: grid.coarse()[point].to_f64().unwrap_or(f64::NAN),
            });
        }
        let cached = cache.as_ref().map_or(0, |c| c.len());
        if k <= cached {
            let c = cache.as_ref().expect("cached > 0");
            for kk in k..=cached.min(config.max_terms) {
                if state.consume(kk, c.term(kk).expect("within cache")) {
                    break 'outer kk;
                }
            }
            k = cached.min(config.max_terms) + 1;
            continue;
        }
        let hi = (k + batch - 1).min(config.max_terms);
        let (terms, failure) = build_terms(source, k, hi);
        for (kk, term) in (k..).zip(terms) {
            let done = state.consume(kk, &term);
            if let Some(c) = cache.as_mut() {
                c.push(term);
            }
            if done {
                break 'outer kk;
            }
        }
        if let Some((_, e)) = failure {
            return Err(e);
        }
        k = hi + 1;
        batch = (batch * 2).min(MAX_BATCH);
    };

    let fine_values = state.fine_values();
    Ok(AdaptiveSolution { ell_hat, ell_per_point: state.ell, grid, fine_values, cache: None })
}

/// Per-coarse-point running sums advanced one term at a time, and the fine-grid
/// partial sum folded into residue classes `k mod L`: on a grid `t_j = 2 pi j / L`
/// the factor `cos(k t_j)` depends only on `k mod L`.
struct Lockstep<'a, T: Real> {
    n: usize,
    tol: T,
    poly: &'a PolynomialPart<T>,
    grid: &'a GridPair<T>,
    coarse_cos: Vec<T>,
    coarse_sin: Vec<T>,
    sums: Vec<Vec<Cplx<T>>>,
    active: Vec<usize>,
    ell: Vec<usize>,
    buckets: Vec<Option<Term<T>>>,
}

impl<'a, T: Real> Lockstep<'a, T> {
    fn new(poly: &'a PolynomialPart<T>, config: &ExpansionConfig<T>, grid: &'a GridPair<T>) -> Self {
        let m = grid.coarse().len();
        let (coarse_cos, coarse_sin) = trig_table::<T>(m - 1);
        Self {
            n: config.n,
            tol: config.tol,
            poly,
            grid,
            coarse_cos,
            coarse_sin,
            sums: grid.coarse().iter().map(|&t| poly.eval(t)).collect(),
            active: (0..m).collect(),
            ell: vec![0; m],
            buckets: vec![None; grid.fine_intervals()],
        }
    }

    fn first_active(&self) -> Option<usize> {
        self.active.first().copied()
    }

    /// Adds term `k`; returns true once every coarse point has met the test.
    fn consume(&mut self, k: usize, term: &Term<T>) -> bool {
        let w = series_weight::<T>(self.n, k);
        let period = self.coarse_cos.len();
        let guard = T::from_f64(DIVISION_GUARD).unwrap_or_else(T::min_positive_value);
        let (sums, ell, tol) = (&mut self.sums, &mut self.ell, self.tol);
        let (cos, sin) = (&self.coarse_cos, &self.coarse_sin);
        self.active.retain(|&i| {
            let q = (k % period) * i % period;
            let (c, s) = (w * cos[q], w * sin[q]);
            let mut delta = T::zero();
            for ((v, &a), &b) in sums[i].iter_mut().zip(&term.a).zip(&term.b) {
                let d = a * c + b * s;
                delta = delta.max(d.norm());
                *v = *v + d;
            }
            let size = norm_inf(&sums[i]);
            let passed = if size < guard { delta <= tol } else { delta <= tol * size };
            if passed {
                ell[i] = k;
            }
            !passed
        });

        let r = k % self.buckets.len();
        let dim = term.a.len();
        let bucket = self.buckets[r].get_or_insert_with(|| {
            let zero = vec![Cplx::new(T::zero(), T::zero()); dim];
            Term { a: zero.clone(), b: zero }
        });
        for (acc, &a) in bucket.a.iter_mut().zip(&term.a) {
            *acc = *acc + a * w;
        }
        for (acc, &b) in bucket.b.iter_mut().zip(&term.b) {
            *acc = *acc + b * w;
        }
        self.active.is_empty()
    }

    fn fine_values(&self) -> Vec<Vec<Cplx<T>>> {
        let period = self.buckets.len();
        let used: Vec<(usize, &Term<T>)> =
            self.buckets.iter().enumerate().filter_map(|(r, b)| b.as_ref().map(|b| (r, b))).collect();
        let mut values: Vec<Vec<Cplx<T>>> = self.grid.fine().par_iter().map(|&t| self.poly.eval(t)).collect();
        if used.len() > DIRECT_BUCKETS {
            self.add_spectral(&mut values);
            return values;
        }
        let (cos, sin) = trig_table::<T>(period);
        values.par_iter_mut().enumerate().for_each(|(j, v)| {
            for &(r, Term { a, b }) in &used {
                let q = r * (j % period) % period;
                let (c, s) = (cos[q], sin[q]);
                for ((o, &ai), &bi) in v.iter_mut().zip(a).zip(b) {
                    *o = *o + ai * c + bi * s;
                }
            }
        });
        values
    }

    /// `sum_r a_r cos(2 pi r j / L) + b_r sin(2 pi r j / L)` per component as
    /// one forward and one inverse FFT of length `L`.
    fn add_spectral(&self, values: &mut [Vec<Cplx<T>>]) {
        let period = self.buckets.len();
        let dim = values[0].len();
        let mut planner = FftPlanner::<T>::new();
        let forward = planner.plan_fft_forward(period);
        let inverse = planner.plan_fft_inverse(period);
        let half = T::lit(0.5);
        let zero = Cplx::new(T::zero(), T::zero());
        let columns: Vec<Vec<Cplx<T>>> = (0..dim)
            .into_par_iter()
            .map(|i| {
                let mut p = vec![zero; period];
                let mut q = vec![zero; period];
                for (r, b) in self.buckets.iter().enumerate() {
                    if let Some(Term { a, b }) = b {
                        let ib = Cplx::new(-b[i].im, b[i].re);
                        p[r] = (a[i] - ib) * half;
                        q[r] = (a[i] + ib) * half;
                    }
                }
                inverse.process(&mut p);
                forward.process(&mut q);
                p.iter_mut().zip(&q).for_each(|(x, &y)| *x = *x + y);
                p
            })
            .collect();
        values.par_iter_mut().enumerate().for_each(|(j, v)| {
            for (o, col) in v.iter_mut().zip(&columns) {
                *o = *o + col[j % period];
            }
        });
    }
}

/// `cos(2 pi q / p)` and `sin(2 pi q / p)` for `q = 0..p`.
fn trig_table<T: Real>(p: usize) -> (Vec<T>, Vec<T>) {
    (0..p)
        .map(|q| {
            let x = T::two_pi() * T::from_usize_lossy(q) / T::from_usize_lossy(p);
            (x.cos(), x.sin())
        })
        .unzip()
}

/// `||v(t_i) - approx(t_i)||_inf / ||v(t_i)||_inf` per point.
pub fn relative_errors<T: Real>(approx: &[Vec<Cplx<T>>], reference: &[Vec<Cplx<T>>], times: &[T]) -> Result<Vec<T>> {
    if approx.len() != reference.len() {
        return Err(Error::DimensionMismatch { expected: reference.len(), got: approx.len() });
    }
    approx
        .iter()
        .zip(reference)
        .enumerate()
        .map(|(i, (a, r))| {
            let size = norm_inf(r);
            if size == T::zero() {
                return Err(Error::DivisionGuard { t: times.get(i).and_then(|t| t.to_f64()).unwrap_or(f64::NAN) });
            }
            Ok(norm_inf_diff(a, r) / size)
        })
        .collect()
}

/// `err = max_i ||v(t_i) - approx(t_i)||_inf / ||v(t_i)||_inf`.
pub fn error_measure<T: Real>(approx: &[Vec<Cplx<T>>], reference: &[Vec<Cplx<T>>], times: &[T]) -> Result<T> {
    Ok(relative_errors(approx, reference, times)?.into_iter().fold(T::zero(), T::max))
}
