use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::{real, Real};
use crate::special::psi1;

pub type ScalarFn<T> = Arc<dyn Fn(T) -> T + Send + Sync>;
pub type SurfaceFn<T> = Arc<dyn Fn(T, T) -> T + Send + Sync>;

/// Zeroth-order coefficient `c(x)`.
#[derive(Clone)]
pub enum Coefficient<T> {
    Constant(T),
    Variable(ScalarFn<T>),
}

impl<T: Real> Coefficient<T> {
    pub fn at(&self, x: T) -> T {
        match self {
            Coefficient::Constant(c) => *c,
            Coefficient::Variable(f) => f(x),
        }
    }

    pub fn constant(&self) -> Option<T> {
        match self {
            Coefficient::Constant(c) => Some(*c),
            Coefficient::Variable(_) => None,
        }
    }
}

/// `u_t = sigma u_xx + c(x) u` on `(0, 1)` with `u(0) = u(1) = 0` and
/// `(1 / 2pi) int_0^{2pi} u(x, t) dt = f(x)`.
#[derive(Clone)]
pub struct ParabolicProblem<T> {
    pub name: String,
    pub sigma: T,
    pub c: Coefficient<T>,
    /// `g_0 = f, g_1 = A f, ...` in closed form.
    pub chain: Vec<ScalarFn<T>>,
    pub exact: Option<SurfaceFn<T>>,
}

impl<T: Real> fmt::Debug for ParabolicProblem<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ParabolicProblem")
            .field("name", &self.name)
            .field("sigma", &self.sigma)
            .field("chain_len", &self.chain.len())
            .field("has_exact", &self.exact.is_some())
            .finish()
    }
}

/// One Dirichlet sine mode `amplitude * sin(mode pi x)` of the solution at `t = 0`
/// rescaled so the time average is the data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SineMode<T> {
    pub mode: usize,
    /// Coefficient of `e^{mu t} sin(mode pi x)` in the exact solution.
    pub amplitude: T,
}

impl<T: Real> ParabolicProblem<T> {
    pub fn new(
        name: impl Into<String>,
        sigma: T,
        c: Coefficient<T>,
        chain: Vec<ScalarFn<T>>,
        exact: Option<SurfaceFn<T>>,
    ) -> Result<Self> {
        if !(sigma > T::zero()) {
            return Err(Error::InvalidConfig(format!("sigma must be positive, got {sigma}")));
        }
        if chain.is_empty() {
            return Err(Error::InvalidConfig("derivative chain needs at least f".into()));
        }
        Ok(Self { name: name.into(), sigma, c, chain, exact })
    }

    /// Problem with constant `c` whose solution is a finite sum of sine modes.
    /// `A sin(m pi x) = mu_m sin(m pi x)` with `mu_m = c - sigma m^2 pi^2`, so every
    /// chain entry is available in closed form up to `order`.
    pub fn from_sine_modes(
        name: impl Into<String>,
        sigma: T,
        c: T,
        modes: &[SineMode<T>],
        order: usize,
    ) -> Result<Self> {
        let tau = T::two_pi();
        let mut data = Vec::with_capacity(modes.len());
        for m in modes {
            let k = T::from_usize_lossy(m.mode) * T::PI();
            let mu = c - sigma * k * k;
            let weight = psi1(real(tau * mu))?.re;
            data.push((k, mu, m.amplitude / weight, m.amplitude));
        }
        let data = Arc::new(data);
        let chain = (0..=order)
            .map(|j| {
                let data = Arc::clone(&data);
                Arc::new(move |x: T| {
                    data.iter().fold(T::zero(), |acc, &(k, mu, fa, _)| acc + fa * mu.powi(j as i32) * (k * x).sin())
                }) as ScalarFn<T>
            })
            .collect();
        let exact: SurfaceFn<T> = Arc::new(move |x: T, t: T| {
            data.iter().fold(T::zero(), |acc, &(k, mu, _, ua)| acc + ua * (mu * t).exp() * (k * x).sin())
        });
        Self::new(name, sigma, Coefficient::Constant(c), chain, Some(exact))
    }

    pub fn f(&self, x: T) -> T {
        (self.chain[0])(x)
    }

    /// Highest closed-form chain order.
    pub fn chain_order(&self) -> usize {
        self.chain.len() - 1
    }

    pub fn require_order(&self, order: usize) -> Result<()> {
        if self.chain_order() < order {
            Err(Error::InvalidConfig(format!(
                "problem '{}' supplies A^j f only up to j = {}, {order} required",
                self.name,
                self.chain_order()
            )))
        } else {
            Ok(())
        }
    }
}

/// Chain order shipped with the built-in problems (covers `n <= 4` in either form).
pub const MODEL_CHAIN_ORDER: usize = 11;

/// `u_t = sigma u_xx` with `u = 12 e^{-9 sigma pi^2 t} sin 3 pi x - 7 e^{-4 sigma pi^2 t} sin 2 pi x`.
pub fn model_problem_1<T: Real>(sigma: T) -> Result<ParabolicProblem<T>> {
    ParabolicProblem::from_sine_modes(
        "model-1",
        sigma,
        T::zero(),
        &[SineMode { mode: 3, amplitude: T::lit(12.0) }, SineMode { mode: 2, amplitude: T::lit(-7.0) }],
        MODEL_CHAIN_ORDER,
    )
}

/// `u_t = u_xx + (4 pi^2 - 1) u` with `u = e^{-t} sin 2 pi x`.
pub fn model_problem_2<T: Real>() -> Result<ParabolicProblem<T>> {
    let c = T::lit(4.0) * T::PI() * T::PI() - T::one();
    ParabolicProblem::from_sine_modes(
        "model-2",
        T::one(),
        c,
        &[SineMode { mode: 2, amplitude: T::one() }],
        MODEL_CHAIN_ORDER,
    )
}
