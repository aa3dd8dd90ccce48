//! Structured matrix families with closed-form spectra.
//!
//! Each backend pairs a [`LinearOperator`] exploiting its structure (Givens sweeps
//! for Hessenberg, Fourier division for circulants, Thomas elimination for
//! tridiagonals) with an optional [`SpectralModel`] used as the exact reference.

mod circulant;
mod diagonal;
mod hessenberg;
pub mod spectral;
mod tridiagonal;

use std::sync::Arc;

pub use circulant::CirculantOperator;
pub use diagonal::DiagonalOperator;
pub use hessenberg::{haar_unitary, random_parts, HessenbergOperator};
pub use spectral::{Basis, FourierPair, ReferenceSolution, SineTransform, SpectralModel};
pub use tridiagonal::TridiagonalOperator;

use crate::error::{Error, Result};
use crate::linalg::dense::DenseMatrix;
use crate::operator::{LinearOperator, ShiftedSolve};
use crate::scalar::{real, Cplx, Real};

/// Construction parameters, kept for reporting.
#[derive(Debug, Clone, PartialEq)]
pub enum BackendParams {
    UnitaryHessenberg { n: usize, seed: Option<u64> },
    Circulant { n: usize, a: [f64; 3] },
    Laplacian { n: usize, sigma: f64, gamma: f64 },
    Tridiagonal { n: usize },
    Diagonal { n: usize },
}

#[derive(Clone)]
pub struct MatrixBackend<T: Real> {
    params: BackendParams,
    op: Arc<dyn LinearOperator<T>>,
    spectral: Option<SpectralModel<T>>,
}

impl<T: Real> std::fmt::Debug for MatrixBackend<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MatrixBackend")
            .field("params", &self.params)
            .field("spectral", &self.spectral.is_some())
            .finish()
    }
}

impl<T: Real> MatrixBackend<T> {
    pub fn params(&self) -> &BackendParams {
        &self.params
    }

    pub fn spectral(&self) -> Option<&SpectralModel<T>> {
        self.spectral.as_ref()
    }

    pub fn operator(&self) -> &dyn LinearOperator<T> {
        self.op.as_ref()
    }

    /// Random unitary upper Hessenberg matrix with known eigenvalues.
    pub fn unitary_hessenberg(n: usize, seed: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidConfig(format!("hessenberg backend needs N >= 2, got {n}")));
        }
        let (d, q) = random_parts::<T>(n, seed);
        let mut b = Self::from_unitary_parts(d, q);
        b.params = BackendParams::UnitaryHessenberg { n, seed: Some(seed) };
        Ok(b)
    }

    /// `B = Q^H D Q` reduced to `H = P^H B P = (QP)^H D (QP)`.
    pub fn from_unitary_parts(d: Vec<Cplx<T>>, q: DenseMatrix<T>) -> Self {
        let n = d.len();
        let b = q.adjoint().matmul(&DenseMatrix::from_diagonal(&d)).matmul(&q);
        let (h, p) = b.hessenberg();
        let w = q.matmul(&p);
        Self {
            params: BackendParams::UnitaryHessenberg { n, seed: None },
            op: Arc::new(HessenbergOperator::new(h)),
            spectral: Some(SpectralModel::new(d, Basis::Dense(Arc::new(w)))),
        }
    }

    /// Banded circulant with bands `(a0, a1, a2)`.
    pub fn circulant(n: usize, a0: T, a1: T, a2: T) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidConfig(format!("circulant backend needs N >= 3, got {n}")));
        }
        let op = CirculantOperator::new(n, [real(a0), real(a1), real(a2)]);
        let spectral = SpectralModel::new(op.eigenvalues().to_vec(), Basis::Fourier(op.fourier().clone()));
        Ok(Self {
            params: BackendParams::Circulant { n, a: [a0, a1, a2].map(|v| v.to_f64().unwrap_or(f64::NAN)) },
            op: Arc::new(op),
            spectral: Some(spectral),
        })
    }

    /// `sigma tridiag(1, -2, 1) - gamma I`.
    pub fn laplacian(n: usize, sigma: T, gamma: T) -> Result<Self> {
        if n < 2 || !(sigma > T::zero()) || gamma < T::zero() {
            return Err(Error::InvalidConfig(format!(
                "laplacian backend needs N >= 2, sigma > 0, gamma >= 0 (got N={n}, sigma={sigma}, gamma={gamma})"
            )));
        }
        let diag = vec![-(sigma + sigma) - gamma; n];
        let mut b = Self::tridiagonal(diag, sigma, Some(-gamma));
        b.params = BackendParams::Laplacian {
            n,
            sigma: sigma.to_f64().unwrap_or(f64::NAN),
            gamma: gamma.to_f64().unwrap_or(f64::NAN),
        };
        Ok(b)
    }

    /// Symmetric tridiagonal with constant off-diagonal `off`. When the diagonal is
    /// `-2 off + shift` for a constant `shift`, pass it to obtain the sine-transform
    /// spectral model.
    pub fn tridiagonal(diag: Vec<T>, off: T, constant_shift: Option<T>) -> Self {
        let n = diag.len();
        let spectral = constant_shift.map(|shift| {
            let step = T::PI() / T::from_usize_lossy(n + 1);
            let eig = (1..=n)
                .map(|j| {
                    let c = (step * T::from_usize_lossy(j)).cos();
                    real(shift + off * (T::lit(2.0) * c - T::lit(2.0)))
                })
                .collect();
            SpectralModel::new(eig, Basis::Sine(Arc::new(SineTransform::new(n))))
        });
        Self { params: BackendParams::Tridiagonal { n }, op: Arc::new(TridiagonalOperator::new(diag, off)), spectral }
    }

    pub fn diagonal(entries: Vec<Cplx<T>>) -> Self {
        let n = entries.len();
        Self {
            params: BackendParams::Diagonal { n },
            spectral: Some(SpectralModel::new(entries.clone(), Basis::Identity)),
            op: Arc::new(DiagonalOperator::new(entries)),
        }
    }

    /// The 1x1 operator `a`.
    pub fn scalar(a: T) -> Self {
        Self::diagonal(vec![real(a)])
    }

    pub fn zero(n: usize) -> Self {
        Self::diagonal(vec![real(T::zero()); n])
    }
}

impl<T: Real> LinearOperator<T> for MatrixBackend<T> {
    fn dim(&self) -> usize {
        self.op.dim()
    }
    fn apply(&self, x: &[Cplx<T>]) -> Vec<Cplx<T>> {
        self.op.apply(x)
    }
    fn solve_shifted(&self, shift: Cplx<T>, rhs: &[Cplx<T>]) -> ShiftedSolve<T> {
        self.op.solve_shifted(shift, rhs)
    }
    fn resolvent(&self, k: usize, g: &[Cplx<T>]) -> Result<Vec<Cplx<T>>> {
        self.op.resolvent(k, g)
    }
}
