//! The abstract linear operator the expansion engine works against.

use crate::error::{Error, Result};
use crate::linalg::PivotStats;
use crate::scalar::{imag_shift, Cplx, Real};

/// A shifted solve `(A - s I) x = g` that hit a (near-)singular pivot.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingularShift {
    pub ratio: f64,
}

impl From<PivotStats> for SingularShift {
    fn from(p: PivotStats) -> Self {
        Self { ratio: p.ratio() }
    }
}

pub type ShiftedSolve<T> = std::result::Result<Vec<Cplx<T>>, SingularShift>;

/// Linear operator exposing application and shifted solves.
///
/// Implementors must be shareable across worker threads: the expansion computes
/// terms for distinct `k` concurrently against the same operator.
pub trait LinearOperator<T: Real>: Send + Sync {
    fn dim(&self) -> usize;

    fn apply(&self, x: &[Cplx<T>]) -> Vec<Cplx<T>>;

    /// Solves `(A - shift I) x = rhs`.
    fn solve_shifted(&self, shift: Cplx<T>, rhs: &[Cplx<T>]) -> ShiftedSolve<T>;

    /// Solves `(A - i k I) x = g`.
    fn solve_minus(&self, k: usize, g: &[Cplx<T>]) -> Result<Vec<Cplx<T>>> {
        self.solve_shifted(imag_shift(k), g).map_err(|s| Error::IllConditionedResolvent { k, ratio: s.ratio })
    }

    /// Solves `(A + i k I) x = g`.
    fn solve_plus(&self, k: usize, g: &[Cplx<T>]) -> Result<Vec<Cplx<T>>> {
        self.solve_shifted(-imag_shift::<T>(k), g).map_err(|s| Error::IllConditionedResolvent { k, ratio: s.ratio })
    }

    /// `V_k g = (A^2 + k^2 I)^{-1} g`, as `(A + ik)^{-1} (A - ik)^{-1} g`.
    fn resolvent(&self, k: usize, g: &[Cplx<T>]) -> Result<Vec<Cplx<T>>> {
        let p = self.solve_minus(k, g)?;
        self.solve_plus(k, &p)
    }
}

impl<T: Real, O: LinearOperator<T> + ?Sized> LinearOperator<T> for &O {
    fn dim(&self) -> usize {
        (**self).dim()
    }
    fn apply(&self, x: &[Cplx<T>]) -> Vec<Cplx<T>> {
        (**self).apply(x)
    }
    fn solve_shifted(&self, shift: Cplx<T>, rhs: &[Cplx<T>]) -> ShiftedSolve<T> {
        (**self).solve_shifted(shift, rhs)
    }
    fn resolvent(&self, k: usize, g: &[Cplx<T>]) -> Result<Vec<Cplx<T>>> {
        (**self).resolvent(k, g)
    }
}
