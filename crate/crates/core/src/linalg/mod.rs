//! Small dense and tridiagonal kernels over complex vectors.

pub mod dense;
pub mod tridiag;

#[cfg(test)]
pub(crate) mod oracle;

use crate::scalar::{Cplx, Real};

/// Pivot magnitudes below this fraction of the largest pivot flag a singular shift.
pub const PIVOT_RATIO_THRESHOLD: f64 = 1e-12;

/// Smallest and largest pivot magnitude seen during an elimination.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PivotStats {
    pub min: f64,
    pub max: f64,
}

impl PivotStats {
    pub(crate) fn new() -> Self {
        Self { min: f64::INFINITY, max: 0.0 }
    }

    pub(crate) fn record(&mut self, p: f64) {
        self.min = self.min.min(p);
        self.max = self.max.max(p);
    }

    pub fn ratio(&self) -> f64 {
        if self.max == 0.0 {
            0.0
        } else {
            self.min / self.max
        }
    }

    pub fn is_singular(&self) -> bool {
        !(self.ratio() >= PIVOT_RATIO_THRESHOLD)
    }
}

pub fn norm_inf<T: Real>(x: &[Cplx<T>]) -> T {
    x.iter().fold(T::zero(), |m, z| m.max(z.norm()))
}

pub fn norm_inf_diff<T: Real>(x: &[Cplx<T>], y: &[Cplx<T>]) -> T {
    x.iter().zip(y).fold(T::zero(), |m, (a, b)| m.max((a - b).norm()))
}

pub fn scale<T: Real>(x: &mut [Cplx<T>], s: Cplx<T>) {
    x.iter_mut().for_each(|v| *v = *v * s);
}
