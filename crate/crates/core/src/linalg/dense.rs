//! Row-major dense complex matrices with the handful of factorizations the
//! backends need: partial-pivot LU, Householder QR and Hessenberg reduction.

use std::ops::{Index, IndexMut};

use super::PivotStats;
use crate::scalar::{Cplx, Real};

#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<Cplx<T>>,
}

impl<T: Real> DenseMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Cplx::new(T::zero(), T::zero()); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Cplx::new(T::one(), T::zero());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Cplx<T>) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_diagonal(d: &[Cplx<T>]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, &v) in d.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Cplx<T>] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.re == T::zero() && a.im == T::zero() {
                    continue;
                }
                let orow = other.row(k);
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(orow) {
                    *d = *d + a * b;
                }
            }
        }
        out
    }

    pub fn matvec(&self, x: &[Cplx<T>]) -> Vec<Cplx<T>> {
        assert_eq!(self.cols, x.len());
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(x).fold(Cplx::new(T::zero(), T::zero()), |acc, (&a, &b)| acc + a * b))
            .collect()
    }

    /// `self^H x` without forming the adjoint.
    pub fn adjoint_matvec(&self, x: &[Cplx<T>]) -> Vec<Cplx<T>> {
        assert_eq!(self.rows, x.len());
        let mut y = vec![Cplx::new(T::zero(), T::zero()); self.cols];
        for (i, &xi) in x.iter().enumerate() {
            for (yj, a) in y.iter_mut().zip(self.row(i)) {
                *yj = *yj + a.conj() * xi;
            }
        }
        y
    }

    /// Max-row-sum norm.
    pub fn norm_inf(&self) -> T {
        (0..self.rows).map(|i| self.row(i).iter().fold(T::zero(), |s, z| s + z.norm())).fold(T::zero(), T::max)
    }

    /// Solves `self x = b` by LU with partial pivoting.
    pub fn lu_solve(&self, b: &[Cplx<T>]) -> Result<(Vec<Cplx<T>>, PivotStats), PivotStats> {
        let n = self.rows;
        assert_eq!(n, self.cols);
        assert_eq!(n, b.len());
        let mut a = self.clone();
        let mut x = b.to_vec();
        let mut stats = PivotStats::new();
        for col in 0..n {
            let (p, mag) = (col..n).map(|r| (r, a[(r, col)].norm())).fold((col, T::zero()), |best, cur| {
                if cur.1 > best.1 {
                    cur
                } else {
                    best
                }
            });
            stats.record(mag.to_f64().unwrap_or(0.0));
            if mag == T::zero() {
                return Err(stats);
            }
            if p != col {
                for j in 0..n {
                    a.data.swap(col * n + j, p * n + j);
                }
                x.swap(col, p);
            }
            let inv = a[(col, col)].inv();
            for r in col + 1..n {
                let factor = a[(r, col)] * inv;
                if factor.norm() == T::zero() {
                    continue;
                }
                for j in col..n {
                    let v = a[(col, j)];
                    a[(r, j)] = a[(r, j)] - factor * v;
                }
                let xc = x[col];
                x[r] = x[r] - factor * xc;
            }
        }
        for i in (0..n).rev() {
            let mut s = x[i];
            for j in i + 1..n {
                s = s - a[(i, j)] * x[j];
            }
            x[i] = s / a[(i, i)];
        }
        Ok((x, stats))
    }

    /// Householder QR of a square matrix: `self = Q R`.
    pub fn qr(&self) -> (Self, Self) {
        let n = self.rows;
        assert_eq!(n, self.cols);
        let mut r = self.clone();
        let mut q = Self::identity(n);
        for j in 0..n.saturating_sub(1) {
            let x: Vec<Cplx<T>> = (j..n).map(|i| r[(i, j)]).collect();
            if let Some(v) = householder_vector(&x) {
                r.reflect_rows(&v, j, j);
                q.reflect_cols(&v, j, 0);
            }
        }
        (q, r)
    }

    /// Reduces to upper Hessenberg form by unitary similarity: returns `(H, P)` with
    /// `H = P^H self P`.
    pub fn hessenberg(&self) -> (Self, Self) {
        let n = self.rows;
        assert_eq!(n, self.cols);
        let mut h = self.clone();
        let mut p = Self::identity(n);
        for j in 0..n.saturating_sub(2) {
            let x: Vec<Cplx<T>> = (j + 1..n).map(|i| h[(i, j)]).collect();
            if let Some(v) = householder_vector(&x) {
                h.reflect_rows(&v, j + 1, 0);
                h.reflect_cols(&v, j + 1, 0);
                p.reflect_cols(&v, j + 1, 0);
            }
            for i in j + 2..n {
                h[(i, j)] = Cplx::new(T::zero(), T::zero());
            }
        }
        (h, p)
    }

    /// Rows `offset..` of columns `from..` ← (I - 2 v v^H) · that block.
    fn reflect_rows(&mut self, v: &[Cplx<T>], offset: usize, from: usize) {
        let two = T::lit(2.0);
        for j in from..self.cols {
            let mut s = Cplx::new(T::zero(), T::zero());
            for (k, vk) in v.iter().enumerate() {
                s = s + vk.conj() * self[(offset + k, j)];
            }
            let s = s * two;
            for (k, vk) in v.iter().enumerate() {
                let cur = self[(offset + k, j)];
                self[(offset + k, j)] = cur - *vk * s;
            }
        }
    }

    /// Columns `offset..` of rows `from..` ← that block · (I - 2 v v^H).
    fn reflect_cols(&mut self, v: &[Cplx<T>], offset: usize, from: usize) {
        let two = T::lit(2.0);
        for i in from..self.rows {
            let mut s = Cplx::new(T::zero(), T::zero());
            for (k, vk) in v.iter().enumerate() {
                s = s + self[(i, offset + k)] * *vk;
            }
            let s = s * two;
            for (k, vk) in v.iter().enumerate() {
                let cur = self[(i, offset + k)];
                self[(i, offset + k)] = cur - s * vk.conj();
            }
        }
    }
}

/// Unit vector `v` with `(I - 2 v v^H) x = alpha e_1`, or `None` if `x` is already
/// a multiple of `e_1`.
fn householder_vector<T: Real>(x: &[Cplx<T>]) -> Option<Vec<Cplx<T>>> {
    let tail: T = x[1..].iter().fold(T::zero(), |s, z| s + z.norm_sqr());
    if tail == T::zero() {
        return None;
    }
    let norm = (x[0].norm_sqr() + tail).sqrt();
    let phase = if x[0].norm() == T::zero() { Cplx::new(T::one(), T::zero()) } else { x[0] / x[0].norm() };
    let mut v = x.to_vec();
    v[0] = v[0] + phase * norm;
    let vn = v.iter().fold(T::zero(), |s, z| s + z.norm_sqr()).sqrt();
    v.iter_mut().for_each(|z| *z = *z / vn);
    Some(v)
}

impl<T> Index<(usize, usize)> for DenseMatrix<T> {
    type Output = Cplx<T>;
    fn index(&self, (i, j): (usize, usize)) -> &Cplx<T> {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for DenseMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Cplx<T> {
        &mut self.data[i * self.cols + j]
    }
}
