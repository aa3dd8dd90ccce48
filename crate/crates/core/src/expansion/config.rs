use crate::error::{Error, Result};
use crate::scalar::Real;

/// Default cap on the number of rational terms.
pub const DEFAULT_MAX_TERMS: usize = 50_000;

/// Default ratio between fine and coarse grid spacing.
pub const DEFAULT_FINE_REFINE: usize = 4;

/// Which representation of the rational terms to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SeriesForm {
    /// `a_k = A V_k g_{2n+1}`, `b_k = A^2 V_k g_{2n+1} / k`.
    #[default]
    OperatorApply,
    /// `a_k = V_k g_{2n+2}`, `b_k = V_k g_{2n+3} / k`.
    DerivativeChain,
}

impl SeriesForm {
    /// Number of chain entries `g_0, g_1, ...` the form consumes for degree `n`.
    pub fn chain_len(self, n: usize) -> usize {
        match self {
            SeriesForm::OperatorApply => 2 * n + 2,
            SeriesForm::DerivativeChain => 2 * n + 4,
        }
    }
}

/// How many points the fine evaluation grid puts in each coarse interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FineRefine {
    Factor(usize),
    /// `m - 1` points per coarse interval, i.e. `(m-1)^2 + 1` fine points.
    Squared,
}

impl Default for FineRefine {
    fn default() -> Self {
        FineRefine::Factor(DEFAULT_FINE_REFINE)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionConfig<T> {
    pub n: usize,
    pub tol: T,
    pub m: usize,
    pub max_terms: usize,
    pub fine_refine: FineRefine,
    pub series_form: SeriesForm,
    /// Keep every `(a_k, b_k)` pair after the solve.
    pub retain_terms: bool,
}

impl<T: Real> ExpansionConfig<T> {
    pub fn new(n: usize, tol: T, m: usize) -> Self {
        Self {
            n,
            tol,
            m,
            max_terms: DEFAULT_MAX_TERMS,
            fine_refine: FineRefine::default(),
            series_form: SeriesForm::default(),
            retain_terms: false,
        }
    }

    pub fn with_form(mut self, form: SeriesForm) -> Self {
        self.series_form = form;
        self
    }

    pub fn with_max_terms(mut self, max_terms: usize) -> Self {
        self.max_terms = max_terms;
        self
    }

    pub fn with_fine_refine(mut self, refine: FineRefine) -> Self {
        self.fine_refine = refine;
        self
    }

    pub fn retaining_terms(mut self) -> Self {
        self.retain_terms = true;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if self.n > 4 {
            return bad(format!("degree n must lie in 0..=4, got {}", self.n));
        }
        if !(self.tol > T::zero()) {
            return bad(format!("tol must be positive, got {}", self.tol));
        }
        if self.m < 2 {
            return bad(format!("coarse grid needs m >= 2 points, got {}", self.m));
        }
        if self.max_terms < 1 {
            return bad("max_terms must be at least 1".into());
        }
        if self.fine_refine == FineRefine::Factor(0) {
            return bad("fine_refine must be at least 1".into());
        }
        Ok(())
    }

    pub fn grid(&self) -> GridPair<T> {
        let r = match self.fine_refine {
            FineRefine::Factor(r) => r,
            FineRefine::Squared => self.m - 1,
        };
        GridPair::new(self.m, r.max(1))
    }
}

/// Uniform coarse grid of `m` points on `[0, 2 pi]` and a fine grid refining it.
///
/// Points are stored as integer fractions of the period so that `cos(k t)` can be
/// evaluated with exact argument reduction.
#[derive(Debug, Clone, PartialEq)]
pub struct GridPair<T> {
    m: usize,
    refine: usize,
    coarse: Vec<T>,
    fine: Vec<T>,
}

impl<T: Real> GridPair<T> {
    pub fn new(m: usize, refine: usize) -> Self {
        assert!(m >= 2 && refine >= 1);
        let intervals = (m - 1) * refine;
        let at = |j: usize, of: usize| {
            if j == of {
                T::two_pi()
            } else {
                T::two_pi() * T::from_usize_lossy(j) / T::from_usize_lossy(of)
            }
        };
        Self {
            m,
            refine,
            coarse: (0..m).map(|i| at(i, m - 1)).collect(),
            fine: (0..=intervals).map(|j| at(j, intervals)).collect(),
        }
    }

    pub fn coarse(&self) -> &[T] {
        &self.coarse
    }

    pub fn fine(&self) -> &[T] {
        &self.fine
    }

    pub fn refine(&self) -> usize {
        self.refine
    }

    /// Number of fine intervals `L`; fine point `j` is `2 pi j / L`.
    pub fn fine_intervals(&self) -> usize {
        (self.m - 1) * self.refine
    }

    /// Index of coarse point `i` within the fine grid.
    pub fn coarse_in_fine(&self, i: usize) -> usize {
        i * self.refine
    }
}
