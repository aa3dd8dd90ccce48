use crate::linalg::PivotStats;
use crate::operator::{LinearOperator, ShiftedSolve, SingularShift};
use crate::scalar::{Cplx, Real};

/// `A = diag(lambda)`; the scalar and zero operators are special cases.
#[derive(Debug, Clone)]
pub struct DiagonalOperator<T> {
    pub(crate) entries: Vec<Cplx<T>>,
}

impl<T: Real> DiagonalOperator<T> {
    pub fn new(entries: Vec<Cplx<T>>) -> Self {
        Self { entries }
    }
}

impl<T: Real> LinearOperator<T> for DiagonalOperator<T> {
    fn dim(&self) -> usize {
        self.entries.len()
    }

    fn apply(&self, x: &[Cplx<T>]) -> Vec<Cplx<T>> {
        x.iter().zip(&self.entries).map(|(a, b)| a * b).collect()
    }

    fn solve_shifted(&self, shift: Cplx<T>, rhs: &[Cplx<T>]) -> ShiftedSolve<T> {
        let mut stats = PivotStats::new();
        let shifted: Vec<Cplx<T>> = self.entries.iter().map(|&l| l - shift).collect();
        shifted.iter().for_each(|d| stats.record(d.norm().to_f64().unwrap_or(0.0)));
        if stats.is_singular() {
            return Err(SingularShift::from(stats));
        }
        Ok(rhs.iter().zip(&shifted).map(|(g, d)| g / d).collect())
    }
}
