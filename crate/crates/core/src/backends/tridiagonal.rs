use crate::linalg::tridiag::{thomas, tridiag_apply};
use crate::operator::{LinearOperator, ShiftedSolve, SingularShift};
use crate::scalar::{real, Cplx, Real};

/// Real symmetric tridiagonal operator with constant off-diagonal and arbitrary
/// diagonal; covers the scaled/shifted Laplacian and its method-of-lines variant
/// `diag(c(x_i)) + (sigma/h^2) tridiag(1, -2, 1)`.
#[derive(Debug, Clone)]
pub struct TridiagonalOperator<T> {
    pub(crate) diag: Vec<T>,
    pub(crate) off: T,
}

impl<T: Real> TridiagonalOperator<T> {
    pub fn new(diag: Vec<T>, off: T) -> Self {
        Self { diag, off }
    }

    pub fn diagonal(&self) -> &[T] {
        &self.diag
    }

    pub fn off_diagonal(&self) -> T {
        self.off
    }
}

impl<T: Real> LinearOperator<T> for TridiagonalOperator<T> {
    fn dim(&self) -> usize {
        self.diag.len()
    }

    fn apply(&self, x: &[Cplx<T>]) -> Vec<Cplx<T>> {
        let off = real(self.off);
        tridiag_apply(|_| off, |i| real(self.diag[i]), |_| off, x)
    }

    fn solve_shifted(&self, shift: Cplx<T>, rhs: &[Cplx<T>]) -> ShiftedSolve<T> {
        let off = real(self.off);
        let (x, stats) = thomas(|_| off, |i| real(self.diag[i]) - shift, |_| off, rhs)?;
        if stats.is_singular() {
            return Err(SingularShift::from(stats));
        }
        Ok(x)
    }
}
