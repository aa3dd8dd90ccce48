use crate::error::{Error, Result};
use crate::operator::LinearOperator;
use crate::scalar::{Cplx, Real};
use crate::special::BernoulliTable;

/// The powers `g_j = A^j f`, either computed by repeated application or supplied
/// in closed form.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivativeChain<T> {
    g: Vec<Vec<Cplx<T>>>,
}

impl<T: Real> DerivativeChain<T> {
    /// `g_0 = f`, `g_{j+1} = A g_j` for `j < order`.
    pub fn from_operator(op: &dyn LinearOperator<T>, f: &[Cplx<T>], order: usize) -> Result<Self> {
        if f.len() != op.dim() {
            return Err(Error::DimensionMismatch { expected: op.dim(), got: f.len() });
        }
        let mut g = Vec::with_capacity(order + 1);
        g.push(f.to_vec());
        for j in 0..order {
            let next = op.apply(&g[j]);
            g.push(next);
        }
        Ok(Self { g })
    }

    /// Uses the given vectors verbatim as `g_0, g_1, ...`.
    pub fn from_vectors(g: Vec<Vec<Cplx<T>>>) -> Result<Self> {
        let Some(first) = g.first() else {
            return Err(Error::InvalidConfig("derivative chain needs at least g_0".into()));
        };
        let dim = first.len();
        if let Some(bad) = g.iter().find(|v| v.len() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, got: bad.len() });
        }
        Ok(Self { g })
    }

    /// Highest available order.
    pub fn order(&self) -> usize {
        self.g.len() - 1
    }

    pub fn dim(&self) -> usize {
        self.g[0].len()
    }

    pub fn get(&self, j: usize) -> Option<&[Cplx<T>]> {
        self.g.get(j).map(Vec::as_slice)
    }

    pub fn as_slice(&self) -> &[Vec<Cplx<T>>] {
        &self.g
    }

    pub(crate) fn require(&self, len: usize) -> Result<()> {
        if self.g.len() < len {
            Err(Error::InvalidConfig(format!("derivative chain has {} entries, {len} required", self.g.len())))
        } else {
            Ok(())
        }
    }
}

/// The polynomial part `p_n(t) = sum_{j=0}^{2n+1} (2 pi)^j / j! B_j(t / 2 pi) g_j`.
#[derive(Debug, Clone)]
pub struct PolynomialPart<T> {
    n: usize,
    g: Vec<Vec<Cplx<T>>>,
    table: BernoulliTable<T>,
}

impl<T: Real> PolynomialPart<T> {
    pub fn new(chain: &DerivativeChain<T>, n: usize) -> Result<Self> {
        chain.require(2 * n + 2)?;
        Ok(Self { n, g: chain.g[..2 * n + 2].to_vec(), table: BernoulliTable::new((2 * n + 1).max(1)) })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.g[0].len()
    }

    /// The scalar weights multiplying `g_0 .. g_{2n+1}` at time `t`.
    pub fn weights(&self, t: T) -> Vec<T> {
        poly_weights(&self.table, self.n, t).expect("table covers degree 2n+1")
    }

    pub fn eval(&self, t: T) -> Vec<Cplx<T>> {
        let w = self.weights(t);
        let mut out = vec![Cplx::new(T::zero(), T::zero()); self.dim()];
        for (gj, &wj) in self.g.iter().zip(&w) {
            for (o, &x) in out.iter_mut().zip(gj) {
                *o = *o + x * wj;
            }
        }
        out
    }
}

/// `p_n(t)` for a chain holding at least `2n + 2` entries.
pub fn poly_part<T: Real>(chain: &DerivativeChain<T>, n: usize, t: T) -> Result<Vec<Cplx<T>>> {
    Ok(PolynomialPart::new(chain, n)?.eval(t))
}

/// `(2 pi)^j / j! B_j(t / 2 pi)` for `j = 0 ..= 2n + 1`.
pub fn poly_weights<T: Real>(table: &BernoulliTable<T>, n: usize, t: T) -> Result<Vec<T>> {
    let tau = T::two_pi();
    let s = t / tau;
    let mut scale = T::one();
    (0..2 * n + 2)
        .map(|j| {
            if j > 0 {
                scale = scale * tau / T::from_usize_lossy(j);
            }
            Ok(scale * table.eval(j, s)?)
        })
        .collect()
}
