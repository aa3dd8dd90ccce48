use std::f64::consts::{PI, TAU};
use std::sync::Arc;

use num_complex::Complex64;

use super::*;
use crate::bvp::RefinePolicy;
use crate::error::Error;
use crate::expansion::ExpansionConfig;
use crate::operator::LinearOperator;

fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, intervals: usize) -> f64 {
    let h = (b - a) / intervals as f64;
    let mut s = f(a) + f(b);
    for i in 1..intervals {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + i as f64 * h);
    }
    s * h / 3.0
}

fn loose_policy() -> RefinePolicy<f64> {
    RefinePolicy::new(1023, 1e-6).unwrap()
}

#[test]
fn chain_starts_with_data() {
    let p = model_problem_1(0.1).unwrap();
    for x in [0.1, 0.37, 0.8] {
        let want =
            12.0 * (3.0 * PI * x).sin() * mean(-0.9 * PI * PI) - 7.0 * (2.0 * PI * x).sin() * mean(-0.4 * PI * PI);
        assert!((p.f(x) - want).abs() < 1e-12 * want.abs().max(1.0));
    }
    assert_eq!(p.chain_order(), MODEL_CHAIN_ORDER);
}

fn mean(mu: f64) -> f64 {
    let z = TAU * mu;
    (z.exp() - 1.0) / z
}

#[test]
fn chain_matches_the_differential_operator() {
    let sigma = 0.3;
    let p = model_problem_1(sigma).unwrap();
    let h = 1e-3;
    for j in 0..4 {
        for x in [0.2, 0.45, 0.7] {
            let g = &p.chain[j];
            let lap: f64 = (g(x + h) - 2.0 * g(x) + g(x - h)) / (h * h);
            let next: f64 = (p.chain[j + 1])(x);
            assert!((sigma * lap - next).abs() <= 1e-4 * next.abs().max(1.0), "j={j} x={x}");
        }
    }
    let p2 = model_problem_2::<f64>().unwrap();
    let c = 4.0 * PI * PI - 1.0;
    for x in [0.1, 0.3, 0.6] {
        let f = &p2.chain[0];
        let af = (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h) + c * f(x);
        assert!((af - p2.chain[1](x)).abs() < 1e-4 * f(x).abs().max(1.0));
        assert!((p2.chain[1](x) + f(x)).abs() < 1e-12);
    }
}

#[test]
fn exact_solutions_satisfy_the_integral_condition() {
    for p in [model_problem_1(0.05).unwrap(), model_problem_1(1.0).unwrap(), model_problem_2().unwrap()] {
        let u = p.exact.clone().unwrap();
        for x in [0.15, 0.5, 0.9] {
            let mean = simpson(|t| u(x, t), 0.0, TAU, 1 << 16) / TAU;
            assert!((mean - p.f(x)).abs() <= 1e-10 * p.f(x).abs().max(1.0), "{} x={x}: {mean} vs {}", p.name, p.f(x));
        }
        for t in [0.0, 1.0, 5.0] {
            assert!(u(0.0, t).abs() < 1e-12 && u(1.0, t).abs() < 1e-10);
        }
    }
}

#[test]
fn invalid_problems_are_rejected() {
    assert!(matches!(model_problem_1(0.0), Err(Error::InvalidConfig(_))));
    let p = model_problem_2::<f64>().unwrap();
    assert!(p.require_order(MODEL_CHAIN_ORDER).is_ok());
    assert!(p.require_order(MODEL_CHAIN_ORDER + 1).is_err());
    assert!(semidiscretize(&p, 1).is_err());
    let no_exact = ParabolicProblem::new("bare", 1.0, Coefficient::Constant(0.0), p.chain.clone(), None).unwrap();
    assert!(mol_solve(&no_exact, 16, &ExpansionConfig::new(1, 1e-8, 10)).is_err());
}

fn dense<T: crate::scalar::Real>(op: &dyn LinearOperator<T>) -> Vec<Vec<num_complex::Complex<T>>> {
    let n = op.dim();
    (0..n)
        .map(|j| {
            let mut e = vec![num_complex::Complex::new(T::zero(), T::zero()); n];
            e[j] = num_complex::Complex::new(T::one(), T::zero());
            op.apply(&e)
        })
        .collect()
}

#[test]
fn semidiscretization_stencil() {
    let p = model_problem_1(1.0).unwrap();
    let sd = semidiscretize(&p, 3).unwrap();
    assert_eq!(sd.x, vec![0.25, 0.5, 0.75]);
    let cols = dense(&sd.backend);
    let expect = [[-32.0, 16.0, 0.0], [16.0, -32.0, 16.0], [0.0, 16.0, -32.0]];
    for (j, col) in cols.iter().enumerate() {
        for (i, v) in col.iter().enumerate() {
            assert!((v - Complex64::new(expect[i][j], 0.0)).norm() < 1e-12);
        }
    }
    assert!(sd.backend.spectral().is_some());
}

#[test]
fn semidiscretization_with_constant_c_shifts_the_laplacian() {
    let sigma = 0.5;
    let n = 10;
    let p = ParabolicProblem::from_sine_modes("s", sigma, 0.0, &[SineMode { mode: 1, amplitude: 1.0 }], 3).unwrap();
    let sd = semidiscretize(&p, n).unwrap();
    let h = 1.0 / (n + 1) as f64;
    let lap = crate::backends::MatrixBackend::laplacian(n, sigma / (h * h), 0.0).unwrap();
    let a = dense(&sd.backend);
    let b = dense(&lap);
    for (ca, cb) in a.iter().zip(&b) {
        assert!(crate::linalg::norm_inf_diff(ca, cb) < 1e-10);
    }
}

#[test]
fn model_two_mode_is_a_discrete_near_eigenvector() {
    let p = model_problem_2::<f64>().unwrap();
    let n = 200;
    let sd = semidiscretize(&p, n).unwrap();
    let s: Vec<Complex64> = sd.x.iter().map(|&x| Complex64::new((2.0 * PI * x).sin(), 0.0)).collect();
    let a = sd.backend.apply(&s);
    let gap = a.iter().zip(&s).map(|(a, s)| (a + s).norm()).fold(0.0, f64::max);
    let h = 1.0 / (n + 1) as f64;
    let shift = 4.0 * PI * PI - 2.0 * (1.0 - (2.0 * PI * h).cos()) / (h * h);
    let peak = s.iter().map(|z| z.norm()).fold(0.0, f64::max);
    assert!((gap - shift * peak).abs() < 1e-9, "gap {gap} vs {}", shift * peak);
    assert!(gap <= 1.01 * 4.0 * PI.powi(4) * h * h / 3.0);
}

#[test]
fn variable_coefficient_enters_the_diagonal() {
    let c: ScalarFn<f64> = Arc::new(|x| x * x);
    let g: ScalarFn<f64> = Arc::new(|x| (PI * x).sin());
    let p = ParabolicProblem::new("var", 1.0, Coefficient::Variable(c), vec![g], None).unwrap();
    let sd = semidiscretize(&p, 4).unwrap();
    assert!(sd.backend.spectral().is_none());
    let cols = dense(&sd.backend);
    for (i, col) in cols.iter().enumerate() {
        let x = (i + 1) as f64 / 5.0;
        assert!((col[i].re - (x * x - 50.0)).abs() < 1e-12);
    }
}

#[test]
fn mol_error_is_second_order_in_space() {
    let p = model_problem_1(1e-2).unwrap();
    let cfg = ExpansionConfig::new(1, 1e-7, 100);
    let coarse = mol_solve(&p, 125, &cfg).unwrap();
    let fine = mol_solve(&p, 1000, &cfg).unwrap();
    let ratio = coarse.err / fine.err;
    let expected = (1001.0f64 / 126.0).powi(2);
    assert!(ratio > 0.7 * expected && ratio < 1.3 * expected, "ratio {ratio} vs {expected}");
    assert_eq!(coarse.rel_errors.len(), coarse.solution.grid.fine().len());
}

#[test]
fn zero_data_gives_zero_solution() {
    let zero: ScalarFn<f64> = Arc::new(|_| 0.0);
    let p = ParabolicProblem::new("zero", 1.0, Coefficient::Constant(0.0), vec![zero; 6], None).unwrap();
    let sol = functional_solve(&p, 1, 3, &loose_policy()).unwrap();
    assert_eq!(sol.ell(), 3);
    for x in [0.2, 0.6] {
        for t in [0.0, 2.0] {
            assert_eq!(sol.eval(x, t).norm(), 0.0);
        }
    }
}

#[test]
fn functional_polynomial_part_alone() {
    // with ell = 0 only p_n remains; for a single mode it is the scalar polynomial
    // approximation times the mode shape
    let p = model_problem_2::<f64>().unwrap();
    let sol = functional_solve(&p, 1, 0, &loose_policy()).unwrap();
    let table = crate::special::BernoulliTable::<f64>::new(3);
    let w = crate::expansion::poly_weights(&table, 1, 1.3).unwrap();
    let scalar: f64 = w.iter().enumerate().map(|(j, wj)| wj * (-1.0f64).powi(j as i32)).sum();
    let x = 0.3;
    let want = scalar * p.f(x);
    assert!((sol.eval(x, 1.3).re - want).abs() < 1e-13 * want.abs().max(1.0));
}

#[test]
fn functional_path_converges_in_ell() {
    let p = model_problem_2::<f64>().unwrap();
    let u = p.exact.clone().unwrap();
    let xs = uniform_points(0.0, 1.0, 65);
    let ts = uniform_points(0.0, TAU, 65);
    let surface = |ell| {
        let sol = functional_solve(&p, 1, ell, &loose_policy()).unwrap();
        pde_error_surface(&|x, t| sol.eval(x, t), &|x, t| u(x, t), &xs, &ts)
    };
    let e20 = surface(20);
    let e40 = surface(40);
    assert!(e40.max < e20.max, "{} vs {}", e40.max, e20.max);
    assert!(e40.max < 1e-4);
    assert_eq!(e40.values.len(), 65 * 65);
    assert_eq!(e40.at(0, 0), e40.values[0]);
}

#[test]
fn functional_solution_satisfies_the_integral_condition() {
    let p = model_problem_2::<f64>().unwrap();
    let sol = functional_solve(&p, 2, 12, &loose_policy()).unwrap();
    for x in [0.2, 0.55, 0.8] {
        let mean = simpson(|t| sol.eval(x, t).re, 0.0, TAU, 2048) / TAU;
        assert!((mean - p.f(x)).abs() < 1e-5, "x={x}: {mean} vs {}", p.f(x));
    }
}

#[test]
fn functional_adaptive_reaches_tolerance() {
    let p = model_problem_2::<f64>().unwrap();
    let xs = uniform_points(0.0, 1.0, 9);
    let cfg = ExpansionConfig::new(2, 1e-6, 12);
    let sol = functional_adaptive(&p, &cfg, xs.clone(), loose_policy()).unwrap();
    let u = p.exact.clone().unwrap();
    assert!(sol.ell_hat >= 1);
    for (t, v) in sol.grid.fine().iter().zip(&sol.fine_values) {
        for (x, z) in xs.iter().zip(v) {
            assert!((z.re - u(*x, *t)).abs() < 1e-4, "x={x} t={t}");
        }
    }
}

#[test]
fn uniform_points_hit_both_ends() {
    let p = uniform_points(0.0, TAU, 7);
    assert_eq!(p.len(), 7);
    assert_eq!(p[0], 0.0);
    assert_eq!(p[6], TAU);
    assert!(uniform_points(0.0, 1.0, 0).is_empty());
    assert_eq!(uniform_points(0.5, 1.0, 1), vec![0.5]);
}
