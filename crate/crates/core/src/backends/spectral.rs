//! Eigen-decompositions `A = Q^H diag(lambda) Q` with fast transforms, and the
//! closed-form solution they give access to.

use std::fmt;
use std::sync::Arc;

use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};
use crate::linalg::dense::DenseMatrix;
use crate::scalar::{Cplx, Real};
use crate::special::psi_t;

/// Unitary DFT pair of a fixed length.
#[derive(Clone)]
pub struct FourierPair<T: Real> {
    forward: Arc<dyn Fft<T>>,
    inverse: Arc<dyn Fft<T>>,
    scale: T,
}

impl<T: Real> FourierPair<T> {
    pub fn new(n: usize) -> Self {
        let mut planner = FftPlanner::new();
        Self {
            forward: planner.plan_fft_forward(n),
            inverse: planner.plan_fft_inverse(n),
            scale: T::one() / T::from_usize_lossy(n).sqrt(),
        }
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `y_l = N^{-1/2} sum_j e^{-2 pi i j l / N} x_j`.
    pub fn forward(&self, x: &[Cplx<T>]) -> Vec<Cplx<T>> {
        let mut buf = x.to_vec();
        self.forward.process(&mut buf);
        buf.iter_mut().for_each(|z| *z = *z * self.scale);
        buf
    }

    pub fn inverse(&self, x: &[Cplx<T>]) -> Vec<Cplx<T>> {
        let mut buf = x.to_vec();
        self.inverse.process(&mut buf);
        buf.iter_mut().for_each(|z| *z = *z * self.scale);
        buf
    }
}

impl<T: Real> fmt::Debug for FourierPair<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FourierPair").field("len", &self.len()).finish()
    }
}

/// Orthonormal discrete sine transform `E_ij = sqrt(2/(N+1)) sin(pi i j / (N+1))`.
/// `E` is symmetric and involutory, so forward and inverse coincide.
#[derive(Debug, Clone)]
pub struct SineTransform<T> {
    n: usize,
    table: Vec<T>,
}

impl<T: Real> SineTransform<T> {
    pub fn new(n: usize) -> Self {
        let period = 2 * (n + 1);
        let norm = (T::lit(2.0) / T::from_usize_lossy(n + 1)).sqrt();
        let step = T::PI() / T::from_usize_lossy(n + 1);
        let table = (0..period).map(|q| norm * (step * T::from_usize_lossy(q)).sin()).collect();
        Self { n, table }
    }

    pub fn apply(&self, x: &[Cplx<T>]) -> Vec<Cplx<T>> {
        let period = 2 * (self.n + 1);
        (1..=self.n)
            .map(|i| {
                let mut acc = Cplx::new(T::zero(), T::zero());
                let mut q = 0;
                for xj in x {
                    q += i;
                    if q >= period {
                        q -= period;
                    }
                    acc = acc + *xj * self.table[q];
                }
                acc
            })
            .collect()
    }
}

/// The unitary factor of a spectral model.
#[derive(Debug, Clone)]
pub enum Basis<T: Real> {
    Identity,
    /// Stores `W = Q`; the eigenvector matrix is `W^H`.
    Dense(Arc<DenseMatrix<T>>),
    Fourier(FourierPair<T>),
    Sine(Arc<SineTransform<T>>),
}

/// Eigenvalues plus the transform pair `g -> Q g`, `y -> Q^H y`.
#[derive(Debug, Clone)]
pub struct SpectralModel<T: Real> {
    eigenvalues: Vec<Cplx<T>>,
    basis: Basis<T>,
}

impl<T: Real> SpectralModel<T> {
    pub fn new(eigenvalues: Vec<Cplx<T>>, basis: Basis<T>) -> Self {
        Self { eigenvalues, basis }
    }

    pub fn eigenvalues(&self) -> &[Cplx<T>] {
        &self.eigenvalues
    }

    pub fn basis(&self) -> &Basis<T> {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// `g -> Q g`.
    pub fn forward(&self, g: &[Cplx<T>]) -> Vec<Cplx<T>> {
        match &self.basis {
            Basis::Identity => g.to_vec(),
            Basis::Dense(w) => w.matvec(g),
            Basis::Fourier(f) => f.forward(g),
            Basis::Sine(s) => s.apply(g),
        }
    }

    /// `y -> Q^H y`.
    pub fn inverse(&self, y: &[Cplx<T>]) -> Vec<Cplx<T>> {
        match &self.basis {
            Basis::Identity => y.to_vec(),
            Basis::Dense(w) => w.adjoint_matvec(y),
            Basis::Fourier(f) => f.inverse(y),
            Basis::Sine(s) => s.apply(y),
        }
    }

    /// `Q^H diag(phi(lambda)) Q g`.
    pub fn apply_function(
        &self,
        g: &[Cplx<T>],
        mut phi: impl FnMut(Cplx<T>) -> Result<Cplx<T>>,
    ) -> Result<Vec<Cplx<T>>> {
        let mut y = self.forward(g);
        for (yi, &l) in y.iter_mut().zip(&self.eigenvalues) {
            *yi = *yi * phi(l)?;
        }
        Ok(self.inverse(&y))
    }

    /// Closed-form solution `v(t) = Q^H diag(e^{lambda t} psi_1(2 pi lambda)) Q f`
    /// with `f` pre-transformed once.
    pub fn reference(&self, f: &[Cplx<T>]) -> Result<ReferenceSolution<'_, T>> {
        if f.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: f.len() });
        }
        let coeffs = self.forward(f);
        // fail on a pole before any evaluation
        for &l in &self.eigenvalues {
            psi_t(l, T::zero())?;
        }
        Ok(ReferenceSolution { model: self, coeffs })
    }

    /// Single-shot evaluation of the closed-form solution at `t`.
    pub fn reference_solution(&self, f: &[Cplx<T>], t: T) -> Result<Vec<Cplx<T>>> {
        self.reference(f)?.eval(t)
    }

    /// `v(0)` from the closed form, then repeated application of the propagator
    /// `B = Q^H diag(e^{lambda dt}) Q`. Returns `count` vectors `v(0), v(dt), ...`.
    pub fn propagate_reference(&self, f: &[Cplx<T>], t_step: T, count: usize) -> Result<Vec<Vec<Cplx<T>>>> {
        let mut out = Vec::with_capacity(count);
        if count == 0 {
            return Ok(out);
        }
        let mut v = self.reference_solution(f, T::zero())?;
        let growth: Vec<Cplx<T>> = self.eigenvalues.iter().map(|&l| (l * t_step).exp()).collect();
        for _ in 1..count {
            let mut y = self.forward(&v);
            y.iter_mut().zip(&growth).for_each(|(a, &g)| *a = *a * g);
            let next = self.inverse(&y);
            out.push(std::mem::replace(&mut v, next));
        }
        out.push(v);
        Ok(out)
    }
}

/// The closed-form solution for one right-hand side.
pub struct ReferenceSolution<'a, T: Real> {
    model: &'a SpectralModel<T>,
    coeffs: Vec<Cplx<T>>,
}

impl<T: Real> ReferenceSolution<'_, T> {
    pub fn eval(&self, t: T) -> Result<Vec<Cplx<T>>> {
        let y = self
            .coeffs
            .iter()
            .zip(self.model.eigenvalues())
            .map(|(&c, &l)| Ok(c * psi_t(l, t)?))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.model.inverse(&y))
    }
}
