use super::spectral::FourierPair;
use crate::error::{Error, Result};
use crate::linalg::PivotStats;
use crate::operator::{LinearOperator, ShiftedSolve, SingularShift};
use crate::scalar::{cplx, imag_shift, Cplx, Real};

/// Banded circulant `C_ij = a_{(i-j) mod N}` with bands `a_0, a_1, a_2`.
/// Shifted solves are diagonal in the Fourier basis.
#[derive(Debug, Clone)]
pub struct CirculantOperator<T: Real> {
    bands: [Cplx<T>; 3],
    eigenvalues: Vec<Cplx<T>>,
    fft: FourierPair<T>,
}

impl<T: Real> CirculantOperator<T> {
    pub fn new(n: usize, bands: [Cplx<T>; 3]) -> Self {
        let step = T::two_pi() / T::from_usize_lossy(n);
        // lambda_l = sum_j a_j e^{-2 pi i l j / N}
        let eigenvalues = (0..n)
            .map(|l| {
                (0..3).fold(cplx(T::zero(), T::zero()), |acc, j| {
                    let phase = step * T::from_usize_lossy((l * j) % n);
                    acc + bands[j] * Cplx::from_polar(T::one(), -phase)
                })
            })
            .collect();
        Self { bands, eigenvalues, fft: FourierPair::new(n) }
    }

    pub fn eigenvalues(&self) -> &[Cplx<T>] {
        &self.eigenvalues
    }

    pub(crate) fn fourier(&self) -> &FourierPair<T> {
        &self.fft
    }

    fn shift_stats(&self, shift: Cplx<T>) -> PivotStats {
        let mut stats = PivotStats::new();
        for &l in &self.eigenvalues {
            stats.record((l - shift).norm().to_f64().unwrap_or(0.0));
        }
        stats
    }
}

impl<T: Real> LinearOperator<T> for CirculantOperator<T> {
    fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    fn apply(&self, x: &[Cplx<T>]) -> Vec<Cplx<T>> {
        let n = x.len();
        let [a0, a1, a2] = self.bands;
        (0..n).map(|i| a0 * x[i] + a1 * x[(i + n - 1) % n] + a2 * x[(i + n - 2) % n]).collect()
    }

    fn solve_shifted(&self, shift: Cplx<T>, rhs: &[Cplx<T>]) -> ShiftedSolve<T> {
        let stats = self.shift_stats(shift);
        if stats.is_singular() {
            return Err(SingularShift::from(stats));
        }
        let mut y = self.fft.forward(rhs);
        y.iter_mut().zip(&self.eigenvalues).for_each(|(v, &l)| *v = *v / (l - shift));
        Ok(self.fft.inverse(&y))
    }

    fn resolvent(&self, k: usize, g: &[Cplx<T>]) -> Result<Vec<Cplx<T>>> {
        let s = imag_shift::<T>(k);
        for stats in [self.shift_stats(s), self.shift_stats(-s)] {
            if stats.is_singular() {
                return Err(Error::IllConditionedResolvent { k, ratio: stats.ratio() });
            }
        }
        let mut y = self.fft.forward(g);
        y.iter_mut().zip(&self.eigenvalues).for_each(|(v, &l)| *v = *v / ((l - s) * (l + s)));
        Ok(self.fft.inverse(&y))
    }
}
