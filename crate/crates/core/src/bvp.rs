//! Two-point boundary value problems `sigma w'' + q(x) w = g(x)`, `w(0) = w(1) = 0`,
//! with complex `q`, solved by centered finite differences on uniform meshes and
//! global mesh doubling.

use crate::error::{Error, Result};
use crate::linalg::tridiag::thomas;
use crate::linalg::{norm_inf, norm_inf_diff};
use crate::scalar::{real, Cplx, Real};

pub const DEFAULT_REFINE_TOL: f64 = 1e-8;
pub const DEFAULT_MAX_DOUBLINGS: usize = 6;
pub const DEFAULT_INITIAL_MESH: usize = 1023;
pub const MIN_MESH: usize = 8;

/// Uniform mesh `x_i = i / (M + 1)` with `M` interior points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mesh1D {
    interior: usize,
}

impl Mesh1D {
    pub fn new(interior: usize) -> Result<Self> {
        if interior == 0 {
            return Err(Error::InvalidConfig("mesh needs at least one interior point".into()));
        }
        Ok(Self { interior })
    }

    pub fn interior(&self) -> usize {
        self.interior
    }

    pub fn h<T: Real>(&self) -> T {
        T::one() / T::from_usize_lossy(self.interior + 1)
    }

    /// `x_i` for `i = 0 ..= M + 1`.
    pub fn point<T: Real>(&self, i: usize) -> T {
        if i == self.interior + 1 {
            T::one()
        } else {
            T::from_usize_lossy(i) / T::from_usize_lossy(self.interior + 1)
        }
    }

    pub fn interior_points<T: Real>(&self) -> Vec<T> {
        (1..=self.interior).map(|i| self.point(i)).collect()
    }

    /// Halves the spacing; interior point `i` becomes interior point `2i`.
    pub fn refined(&self) -> Self {
        Self { interior: 2 * self.interior + 1 }
    }
}

/// Values at the interior nodes of a mesh, zero on the boundary.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction<T> {
    mesh: Mesh1D,
    values: Vec<Cplx<T>>,
}

impl<T: Real> GridFunction<T> {
    pub fn new(mesh: Mesh1D, values: Vec<Cplx<T>>) -> Result<Self> {
        if values.len() != mesh.interior() {
            return Err(Error::DimensionMismatch { expected: mesh.interior(), got: values.len() });
        }
        Ok(Self { mesh, values })
    }

    pub fn zero(mesh: Mesh1D) -> Self {
        Self { mesh, values: vec![real(T::zero()); mesh.interior()] }
    }

    pub fn mesh(&self) -> Mesh1D {
        self.mesh
    }

    pub fn values(&self) -> &[Cplx<T>] {
        &self.values
    }

    fn node(&self, i: usize) -> Cplx<T> {
        if i == 0 || i > self.mesh.interior() {
            real(T::zero())
        } else {
            self.values[i - 1]
        }
    }

    /// Piecewise-linear interpolation; zero outside `(0, 1)`.
    pub fn eval(&self, x: T) -> Cplx<T> {
        if !(x > T::zero() && x < T::one()) {
            return real(T::zero());
        }
        let cells = self.mesh.interior() + 1;
        let s = x * T::from_usize_lossy(cells);
        let i = s.floor().to_usize().unwrap_or(0).min(cells - 1);
        let frac = s - T::from_usize_lossy(i);
        self.node(i) * (T::one() - frac) + self.node(i + 1) * frac
    }

    pub fn sample(&self, xs: &[T]) -> Vec<Cplx<T>> {
        xs.iter().map(|&x| self.eval(x)).collect()
    }

    pub fn norm_inf(&self) -> T {
        norm_inf(&self.values)
    }

    /// Restriction to the nodes of the mesh this one was refined from.
    fn coarsened(&self) -> Vec<Cplx<T>> {
        self.values.iter().skip(1).step_by(2).copied().collect()
    }
}

/// `sigma w'' + q(x) w = rhs(x)` with homogeneous Dirichlet data.
pub struct BvpProblem<'a, T> {
    pub sigma: T,
    pub q: &'a (dyn Fn(T) -> Cplx<T> + Sync),
    pub rhs: &'a (dyn Fn(T) -> Cplx<T> + Sync),
}

/// Mesh-doubling policy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RefinePolicy<T> {
    pub initial: Mesh1D,
    pub refine_tol: T,
    pub max_doublings: usize,
}

impl<T: Real> Default for RefinePolicy<T> {
    fn default() -> Self {
        Self {
            initial: Mesh1D { interior: DEFAULT_INITIAL_MESH },
            refine_tol: T::lit(DEFAULT_REFINE_TOL),
            max_doublings: DEFAULT_MAX_DOUBLINGS,
        }
    }
}

impl<T: Real> RefinePolicy<T> {
    pub fn new(initial: usize, refine_tol: T) -> Result<Self> {
        if initial < MIN_MESH {
            return Err(Error::InvalidConfig(format!("initial mesh needs M >= {MIN_MESH}, got {initial}")));
        }
        if !(refine_tol > T::zero()) {
            return Err(Error::InvalidConfig(format!("refine_tol must be positive, got {refine_tol}")));
        }
        Ok(Self { initial: Mesh1D::new(initial)?, refine_tol, max_doublings: DEFAULT_MAX_DOUBLINGS })
    }
}

/// Finest-mesh solution and the difference to the previous level.
#[derive(Debug, Clone, PartialEq)]
pub struct BvpSolution<T> {
    pub solution: GridFunction<T>,
    pub estimate: T,
}

/// One finite-difference solve on a fixed mesh, `q` and `rhs` given at the
/// interior nodes.
pub fn solve_fd<T: Real>(sigma: T, mesh: Mesh1D, q: &[Cplx<T>], rhs: &[Cplx<T>]) -> Result<GridFunction<T>> {
    let m = mesh.interior();
    if q.len() != m || rhs.len() != m {
        return Err(Error::DimensionMismatch { expected: m, got: q.len().min(rhs.len()) });
    }
    let h: T = mesh.h();
    let off = real(sigma / (h * h));
    let centre = real(-(sigma + sigma) / (h * h));
    let (x, stats) =
        thomas(|_| off, |i| centre + q[i], |_| off, rhs).map_err(|s| Error::IllConditionedBvp { ratio: s.ratio() })?;
    if stats.is_singular() {
        return Err(Error::IllConditionedBvp { ratio: stats.ratio() });
    }
    GridFunction::new(mesh, x)
}

/// Solves with mesh doubling until `||u_2M - u_M|| <= refine_tol (1 + ||u_2M||)`.
pub fn solve_bvp<T: Real>(problem: &BvpProblem<'_, T>, policy: &RefinePolicy<T>) -> Result<BvpSolution<T>> {
    refine(policy, |mesh| {
        let xs = mesh.interior_points::<T>();
        let q: Vec<Cplx<T>> = xs.iter().map(|&x| (problem.q)(x)).collect();
        let rhs: Vec<Cplx<T>> = xs.iter().map(|&x| (problem.rhs)(x)).collect();
        solve_fd(problem.sigma, mesh, &q, &rhs)
    })
}

/// `V_k g = (A^2 + k^2)^{-1} g` for `A = sigma d^2/dx^2 + c(x)` as the chain
/// `(A - ik) p = g`, `(A + ik) w = p`. Both solves share each mesh, and the pair
/// is refined as one unit.
pub fn functional_resolvent<T: Real>(
    k: usize,
    g: &(dyn Fn(T) -> Cplx<T> + Sync),
    sigma: T,
    c: &(dyn Fn(T) -> T + Sync),
    policy: &RefinePolicy<T>,
) -> Result<BvpSolution<T>> {
    let ik = Cplx::new(T::zero(), T::from_usize_lossy(k));
    refine(policy, |mesh| {
        let xs = mesh.interior_points::<T>();
        let cx: Vec<Cplx<T>> = xs.iter().map(|&x| real(c(x))).collect();
        let rhs: Vec<Cplx<T>> = xs.iter().map(|&x| g(x)).collect();
        let minus: Vec<Cplx<T>> = cx.iter().map(|&v| v - ik).collect();
        let plus: Vec<Cplx<T>> = cx.iter().map(|&v| v + ik).collect();
        let p = solve_fd(sigma, mesh, &minus, &rhs)?;
        solve_fd(sigma, mesh, &plus, p.values())
    })
}

fn refine<T: Real>(
    policy: &RefinePolicy<T>,
    mut solve: impl FnMut(Mesh1D) -> Result<GridFunction<T>>,
) -> Result<BvpSolution<T>> {
    let mut mesh = policy.initial;
    let mut prev = solve(mesh)?;
    let mut estimate = T::infinity();
    for _ in 0..policy.max_doublings {
        mesh = mesh.refined();
        let next = solve(mesh)?;
        estimate = norm_inf_diff(&next.coarsened(), prev.values());
        prev = next;
        if estimate <= policy.refine_tol * (T::one() + prev.norm_inf()) {
            return Ok(BvpSolution { solution: prev, estimate });
        }
    }
    Err(Error::MeshBudget { mesh: mesh.interior(), estimate: estimate.to_f64().unwrap_or(f64::INFINITY) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    type C = Complex64;

    fn sup_error(u: &GridFunction<f64>, exact: impl Fn(f64) -> C) -> f64 {
        let m = u.mesh();
        (1..=m.interior()).map(|i| (u.values()[i - 1] - exact(m.point(i))).norm()).fold(0.0, f64::max)
    }

    fn manufactured(m: usize) -> GridFunction<f64> {
        let mesh = Mesh1D::new(m).unwrap();
        let xs = mesh.interior_points::<f64>();
        let q = vec![C::new(0.0, 0.0); m];
        let rhs: Vec<C> = xs.iter().map(|&x| C::new(-PI * PI * (PI * x).sin(), 0.0)).collect();
        solve_fd(1.0, mesh, &q, &rhs).unwrap()
    }

    #[test]
    fn manufactured_sine_solution() {
        let u = manufactured(128);
        let err = sup_error(&u, |x| C::new((PI * x).sin(), 0.0));
        assert!(err <= 1e-4, "{err:e}");
    }

    #[test]
    fn second_order_convergence() {
        let errors: Vec<f64> = [15, 31, 63, 127, 255]
            .into_iter()
            .map(|m| sup_error(&manufactured(m), |x| C::new((PI * x).sin(), 0.0)))
            .collect();
        for w in errors.windows(2) {
            let order = (w[0] / w[1]).log2();
            assert!((order - 2.0).abs() <= 0.2, "order {order}");
        }
    }

    #[test]
    fn homogeneous_problem_has_zero_solution() {
        let zero = |_: f64| C::new(0.0, 0.0);
        let q = |x: f64| C::new(x, -3.0);
        let p = BvpProblem { sigma: 1.0, q: &q, rhs: &zero };
        let sol = solve_bvp(&p, &RefinePolicy::new(16, 1e-8).unwrap()).unwrap();
        assert!(sol.solution.values().iter().all(|z| *z == C::new(0.0, 0.0)));
    }

    #[test]
    fn single_mode_with_complex_coefficient() {
        // sin(2 pi x) is an eigenfunction: w = sin(2 pi x) / (-4 pi^2 + 4 pi^2 - 1 - i)
        let c0 = 4.0 * PI * PI - 1.0;
        let q = move |_: f64| C::new(c0, -1.0);
        let rhs = |x: f64| C::new((2.0 * PI * x).sin(), 0.0);
        let p = BvpProblem { sigma: 1.0, q: &q, rhs: &rhs };
        let denom = C::new(-4.0 * PI * PI + c0, -1.0);
        let exact = |x: f64| C::new((2.0 * PI * x).sin(), 0.0) / denom;
        let sol = solve_bvp(&p, &RefinePolicy::new(1023, 1e-6).unwrap()).unwrap();
        let err = sup_error(&sol.solution, exact);
        assert!(err <= 1e-5, "{err:e}");
        // the discrete symbol error 4 pi^4 h^2 / 3 is amplified by 1 / |denom|^2
        let h: f64 = sol.solution.mesh().h();
        assert!(err <= 70.0 * h * h, "{err:e}");
    }

    #[test]
    fn real_data_gives_real_solution() {
        let q = |x: f64| C::new(3.0 * x - 1.0, 0.0);
        let rhs = |x: f64| C::new(x * (1.0 - x) * (5.0 * x).cos(), 0.0);
        let mesh = Mesh1D::new(200).unwrap();
        let xs = mesh.interior_points::<f64>();
        let qv: Vec<C> = xs.iter().map(|&x| q(x)).collect();
        let rv: Vec<C> = xs.iter().map(|&x| rhs(x)).collect();
        let u = solve_fd(0.7, mesh, &qv, &rv).unwrap();
        let im = u.values().iter().fold(0.0f64, |m, z| m.max(z.im.abs()));
        assert!(im <= 1e-13 * u.norm_inf());
    }

    #[test]
    fn resolvent_single_mode_closed_forms() {
        let policy = RefinePolicy::default();
        let sigma = 0.5;
        for (mode, k) in [(1usize, 1usize), (2, 3), (3, 10)] {
            let mpi = mode as f64 * PI;
            let g = move |x: f64| C::new((mpi * x).sin(), 0.0);
            let w = functional_resolvent(k, &g, sigma, &|_| 0.0, &policy).unwrap();
            let denom = (sigma * mpi * mpi).powi(2) + (k * k) as f64;
            let err = sup_error(&w.solution, |x| g(x) / denom);
            assert!(err <= 1e-8, "mode {mode} k {k}: {err:e}");
        }

        let c0 = 4.0 * PI * PI - 1.0;
        let g = |x: f64| C::new((2.0 * PI * x).sin(), 0.0);
        // near-cancellation of 4 pi^2 against the symbol puts a roundoff floor near 1e-7
        let loose = RefinePolicy::new(1023, 1e-6).unwrap();
        for k in [1usize, 2, 7] {
            let w = functional_resolvent(k, &g, 1.0, &|_| c0, &loose).unwrap();
            let denom = 1.0 + (k * k) as f64;
            let err = sup_error(&w.solution, |x| g(x) / denom);
            assert!(err <= 1e-5, "k {k}: {err:e}");
        }

        let zero = |_: f64| C::new(0.0, 0.0);
        let w = functional_resolvent(4, &zero, 1.0, &|x| x, &policy).unwrap();
        assert_eq!(w.solution.norm_inf(), 0.0);
    }

    #[test]
    fn resolvent_satisfies_squared_operator() {
        // ((A + ik)(A - ik)) w = g with the same discrete A, checked on the finest mesh
        let sigma = 1e-2;
        let c = |x: f64| 1.0 + x;
        let g = |x: f64| C::new((3.0 * PI * x).sin() * (1.0 + x * x), 0.0);
        let k = 5;
        let policy = RefinePolicy::new(63, 1e-6).unwrap();
        let w = functional_resolvent(k, &g, sigma, &c, &policy).unwrap().solution;
        let mesh = w.mesh();
        let h: f64 = mesh.h();
        let apply = |v: &[C], shift: C| -> Vec<C> {
            (0..v.len())
                .map(|i| {
                    let l = if i > 0 { v[i - 1] } else { C::new(0.0, 0.0) };
                    let r = if i + 1 < v.len() { v[i + 1] } else { C::new(0.0, 0.0) };
                    (l - 2.0 * v[i] + r) * (sigma / (h * h)) + v[i] * (c(mesh.point(i + 1)) + shift)
                })
                .collect()
        };
        let ik = C::new(0.0, k as f64);
        let back = apply(&apply(w.values(), ik), -ik);
        let target: Vec<C> = mesh.interior_points::<f64>().iter().map(|&x| g(x)).collect();
        let res = norm_inf_diff(&back, &target) / norm_inf(&target);
        assert!(res <= 10.0 * 1e-6, "{res:e}");
    }

    #[test]
    fn resolvent_matches_semidiscrete_operator() {
        use crate::backends::MatrixBackend;
        use crate::operator::LinearOperator;
        let (sigma, c0, m, k) = (0.3, 2.0, 127usize, 3usize);
        let mesh = Mesh1D::new(m).unwrap();
        let h: f64 = mesh.h();
        let g = |x: f64| C::new(x * (1.0 - x) * (2.0 * x).exp(), 0.0);
        let gv: Vec<C> = mesh.interior_points::<f64>().iter().map(|&x| g(x)).collect();
        let diag = vec![-2.0 * sigma / (h * h) + c0; m];
        let a = MatrixBackend::tridiagonal(diag, sigma / (h * h), None);
        let discrete = a.resolvent(k, &gv).unwrap();
        let w = functional_resolvent(k, &g, sigma, &|_| c0, &RefinePolicy::default()).unwrap().solution;
        let diff = norm_inf_diff(&w.sample(&mesh.interior_points::<f64>()), &discrete);
        assert!(diff <= 10.0 * h * h * norm_inf(&discrete), "{diff:e}");
    }

    #[test]
    fn mesh_budget_is_reported() {
        let q = |_: f64| C::new(0.0, 0.0);
        let rhs = |x: f64| C::new((40.0 * x).sin(), 0.0);
        let p = BvpProblem { sigma: 1.0, q: &q, rhs: &rhs };
        let mut policy = RefinePolicy::new(8, 1e-14).unwrap();
        policy.max_doublings = 2;
        assert!(matches!(solve_bvp(&p, &policy), Err(Error::MeshBudget { mesh: 35, .. })));
        assert!(RefinePolicy::new(4, 1e-8).is_err());
    }

    #[test]
    fn singular_shift_is_ill_conditioned() {
        // pi^2 is the first Dirichlet eigenvalue of -d^2/dx^2 on the discrete level
        let mesh = Mesh1D::new(31).unwrap();
        let h: f64 = mesh.h();
        let lam = 4.0 / (h * h) * (PI * h / 2.0).sin().powi(2);
        let q = vec![C::new(lam, 0.0); 31];
        let rhs = vec![C::new(1.0, 0.0); 31];
        assert!(matches!(solve_fd(1.0, mesh, &q, &rhs), Err(Error::IllConditionedBvp { .. })));
    }

    #[test]
    fn interpolation_is_linear_between_nodes() {
        let mesh = Mesh1D::new(3).unwrap();
        let u = GridFunction::new(mesh, vec![C::new(1.0, 0.0), C::new(2.0, 1.0), C::new(0.0, 0.0)]).unwrap();
        assert_eq!(u.eval(0.0), C::new(0.0, 0.0));
        assert_eq!(u.eval(0.125), C::new(0.5, 0.0));
        assert_eq!(u.eval(0.375), C::new(1.5, 0.5));
        assert_eq!(u.eval(1.0), C::new(0.0, 0.0));
    }

    proptest! {
        #[test]
        fn refined_mesh_nests(m in 1usize..500, i in 0usize..500) {
            let i = i % (m + 2);
            let mesh = Mesh1D::new(m).unwrap();
            prop_assert_eq!(mesh.point::<f64>(i), mesh.refined().point::<f64>(2 * i));
        }
    }
}
