use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::dense::DenseMatrix;
use crate::linalg::PivotStats;
use crate::operator::{LinearOperator, ShiftedSolve, SingularShift};
use crate::scalar::{cplx, Cplx, Real};

/// Upper Hessenberg operator with an `O(N^2)` Givens-based shifted solver.
#[derive(Debug, Clone)]
pub struct HessenbergOperator<T> {
    h: DenseMatrix<T>,
}

impl<T: Real> HessenbergOperator<T> {
    pub fn new(h: DenseMatrix<T>) -> Self {
        assert_eq!(h.rows(), h.cols());
        Self { h }
    }

    pub fn matrix(&self) -> &DenseMatrix<T> {
        &self.h
    }
}

impl<T: Real> LinearOperator<T> for HessenbergOperator<T> {
    fn dim(&self) -> usize {
        self.h.rows()
    }

    fn apply(&self, x: &[Cplx<T>]) -> Vec<Cplx<T>> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let lo = i.saturating_sub(1);
                self.h.row(i)[lo..].iter().zip(&x[lo..]).fold(cplx(T::zero(), T::zero()), |acc, (&a, &b)| acc + a * b)
            })
            .collect()
    }

    fn solve_shifted(&self, shift: Cplx<T>, rhs: &[Cplx<T>]) -> ShiftedSolve<T> {
        let n = self.dim();
        let mut rows: Vec<Vec<Cplx<T>>> = (0..n)
            .map(|i| {
                let mut r = self.h.row(i).to_vec();
                r[i] = r[i] - shift;
                r
            })
            .collect();
        let mut b = rhs.to_vec();
        // Givens rotations annihilate the sub-diagonal row by row
        for i in 0..n.saturating_sub(1) {
            let a = rows[i][i];
            let s_ = rows[i + 1][i];
            if s_.norm() == T::zero() {
                continue;
            }
            let r = (a.norm_sqr() + s_.norm_sqr()).sqrt();
            let (c, s) = if a.norm() == T::zero() {
                (T::zero(), s_.conj() / s_.norm())
            } else {
                (a.norm() / r, (a / a.norm()) * s_.conj() / r)
            };
            let (top, bottom) = rows.split_at_mut(i + 1);
            let (ri, rj) = (&mut top[i], &mut bottom[0]);
            for j in i..n {
                let (x, y) = (ri[j], rj[j]);
                ri[j] = x * c + s * y;
                rj[j] = -s.conj() * x + y * c;
            }
            let (x, y) = (b[i], b[i + 1]);
            b[i] = x * c + s * y;
            b[i + 1] = -s.conj() * x + y * c;
        }
        let mut stats = PivotStats::new();
        for (i, row) in rows.iter().enumerate() {
            stats.record(row[i].norm().to_f64().unwrap_or(0.0));
        }
        if stats.is_singular() {
            return Err(SingularShift::from(stats));
        }
        for i in (0..n).rev() {
            let mut acc = b[i];
            for j in i + 1..n {
                acc = acc - rows[i][j] * b[j];
            }
            b[i] = acc / rows[i][i];
        }
        Ok(b)
    }
}

/// Haar-distributed unitary matrix: QR of a complex Gaussian matrix with the
/// phases of `R`'s diagonal moved into `Q`.
pub fn haar_unitary<T: Real>(n: usize, rng: &mut ChaCha8Rng) -> DenseMatrix<T> {
    let half = T::lit(0.5f64.sqrt());
    let z = DenseMatrix::from_fn(n, n, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        cplx(T::lit(re) * half, T::lit(im) * half)
    });
    let (mut q, r) = z.qr();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() == T::zero() { cplx(T::one(), T::zero()) } else { d / d.norm() };
        for i in 0..n {
            q[(i, j)] = q[(i, j)] * phase;
        }
    }
    q
}

/// Random unit-modulus eigenvalues and a Haar unitary for the given seed.
pub fn random_parts<T: Real>(n: usize, seed: u64) -> (Vec<Cplx<T>>, DenseMatrix<T>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = (0..n)
        .map(|_| {
            let theta: f64 = rng.random_range(0.0..std::f64::consts::TAU);
            Cplx::from_polar(T::one(), T::lit(theta))
        })
        .collect();
    let q = haar_unitary(n, &mut rng);
    (d, q)
}
