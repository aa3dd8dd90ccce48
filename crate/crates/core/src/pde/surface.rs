use rayon::prelude::*;

use crate::scalar::{Cplx, Real};

/// `|v(x, t) - u(x, t)|` sampled on a tensor grid, `t`-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorSurface<T> {
    pub xs: Vec<T>,
    pub ts: Vec<T>,
    pub values: Vec<T>,
    pub max: T,
}

impl<T: Real> ErrorSurface<T> {
    pub fn at(&self, ix: usize, it: usize) -> T {
        self.values[it * self.xs.len() + ix]
    }
}

pub fn pde_error_surface<T: Real>(
    approx: &(dyn Fn(T, T) -> Cplx<T> + Sync),
    exact: &(dyn Fn(T, T) -> T + Sync),
    xs: &[T],
    ts: &[T],
) -> ErrorSurface<T> {
    let values: Vec<T> = ts
        .par_iter()
        .flat_map_iter(|&t| xs.iter().map(move |&x| (approx(x, t) - Cplx::new(exact(x, t), T::zero())).norm()))
        .collect();
    let max = values.iter().copied().fold(T::zero(), T::max);
    ErrorSurface { xs: xs.to_vec(), ts: ts.to_vec(), values, max }
}

/// `count` equispaced points from `a` to `b` inclusive.
pub fn uniform_points<T: Real>(a: T, b: T, count: usize) -> Vec<T> {
    match count {
        0 => Vec::new(),
        1 => vec![a],
        _ => {
            (0..count)
                .map(|i| {
                    if i + 1 == count {
                        b
                    } else {
                        a + (b - a) * T::from_usize_lossy(i) / T::from_usize_lossy(count - 1)
                    }
                })
                .collect()
        }
    }
}
