//! Brute-force eigenvalue oracle for tiny matrices (tests only).

use num_complex::Complex64;

use super::dense::DenseMatrix;

/// Characteristic polynomial coefficients (lowest degree first, monic) by Faddeev-LeVerrier.
pub fn char_poly(a: &DenseMatrix<f64>) -> Vec<Complex64> {
    let n = a.rows();
    let mut c = vec![Complex64::new(0.0, 0.0); n + 1];
    c[n] = Complex64::new(1.0, 0.0);
    let mut m = DenseMatrix::<f64>::zeros(n, n);
    for k in 1..=n {
        let mut next = a.matmul(&m);
        for i in 0..n {
            next[(i, i)] += c[n - k + 1];
        }
        m = next;
        let am = a.matmul(&m);
        let tr: Complex64 = (0..n).map(|i| am[(i, i)]).sum();
        c[n - k] = -tr / k as f64;
    }
    c
}

pub fn eval_poly(c: &[Complex64], z: Complex64) -> Complex64 {
    c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a)
}

/// All roots of a monic polynomial by Durand-Kerner iteration.
pub fn roots(c: &[Complex64]) -> Vec<Complex64> {
    let n = c.len() - 1;
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n).map(|i| seed.powu(i as u32 + 1)).collect();
    for _ in 0..2000 {
        let prev = z.clone();
        for i in 0..n {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    den *= z[i] - z[j];
                }
            }
            let step = eval_poly(c, z[i]) / den;
            z[i] -= step;
        }
        if z.iter().zip(&prev).all(|(a, b)| (a - b).norm() < 1e-15) {
            break;
        }
    }
    z
}

/// Eigenvalues of a small dense matrix via its characteristic polynomial.
pub fn eigenvalues(a: &DenseMatrix<f64>) -> Vec<Complex64> {
    assert!(a.rows() <= 5, "oracle is only meant for N <= 5");
    roots(&char_poly(a))
}

/// Greedy matching distance between two eigenvalue multisets.
pub fn match_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    let mut used = vec![false; b.len()];
    let mut worst: f64 = 0.0;
    for &x in a {
        let (j, d) = b
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, &y)| (j, (x - y).norm()))
            .fold((usize::MAX, f64::INFINITY), |best, cur| if cur.1 < best.1 { cur } else { best });
        used[j] = true;
        worst = worst.max(d);
    }
    worst
}
