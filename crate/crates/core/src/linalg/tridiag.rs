//! Thomas elimination for complex tridiagonal systems.

use super::PivotStats;
use crate::scalar::{Cplx, Real};

/// Solves `T x = rhs` where `T` has sub-diagonal `lower` (len n-1), diagonal `diag`
/// and super-diagonal `upper` (len n-1). No pivoting; the pivot range is reported so
/// the caller can reject near-singular systems.
///
/// Returns `Err(stats)` if an exactly zero pivot is met.
pub fn thomas<T: Real>(
    lower: impl Fn(usize) -> Cplx<T>,
    diag: impl Fn(usize) -> Cplx<T>,
    upper: impl Fn(usize) -> Cplx<T>,
    rhs: &[Cplx<T>],
) -> Result<(Vec<Cplx<T>>, PivotStats), PivotStats> {
    let n = rhs.len();
    let mut stats = PivotStats::new();
    if n == 0 {
        return Ok((Vec::new(), stats));
    }
    let mut c = vec![Cplx::new(T::zero(), T::zero()); n];
    let mut x = vec![Cplx::new(T::zero(), T::zero()); n];

    let mut pivot = diag(0);
    for i in 0..n {
        if i > 0 {
            pivot = diag(i) - lower(i - 1) * c[i - 1];
        }
        let mag = pivot.norm().to_f64().unwrap_or(0.0);
        stats.record(mag);
        if mag == 0.0 {
            return Err(stats);
        }
        let inv = pivot.inv();
        if i + 1 < n {
            c[i] = upper(i) * inv;
        }
        let prev = if i > 0 { lower(i - 1) * x[i - 1] } else { Cplx::new(T::zero(), T::zero()) };
        x[i] = (rhs[i] - prev) * inv;
    }
    for i in (0..n - 1).rev() {
        let next = x[i + 1];
        x[i] = x[i] - c[i] * next;
    }
    Ok((x, stats))
}

/// `y = T x` for the same band layout as [`thomas`].
pub fn tridiag_apply<T: Real>(
    lower: impl Fn(usize) -> Cplx<T>,
    diag: impl Fn(usize) -> Cplx<T>,
    upper: impl Fn(usize) -> Cplx<T>,
    x: &[Cplx<T>],
) -> Vec<Cplx<T>> {
    let n = x.len();
    (0..n)
        .map(|i| {
            let mut y = diag(i) * x[i];
            if i > 0 {
                y = y + lower(i - 1) * x[i - 1];
            }
            if i + 1 < n {
                y = y + upper(i) * x[i + 1];
            }
            y
        })
        .collect()
}
