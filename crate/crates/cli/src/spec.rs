use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::ValueEnum;
use nonlocal_core::expansion::{FineRefine, DEFAULT_MAX_TERMS};
use nonlocal_core::Config64;
use serde::{Serialize, Serializer};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    Hessenberg,
    Circulant,
    Laplacian,
    PowerCompare,
    PdeMol,
    PdeFunctional,
}

impl Experiment {
    pub fn is_pde(self) -> bool {
        matches!(self, Experiment::PdeMol | Experiment::PdeFunctional)
    }
}

/// Which built-in parabolic problem the PDE experiments solve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelProblem {
    #[value(name = "1")]
    #[serde(rename = "1")]
    One,
    #[value(name = "2")]
    #[serde(rename = "2")]
    Two,
}

/// `--fine-refine`: an integer factor or `squared` for `(m-1)^2` fine intervals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FineRefineArg(pub FineRefine);

impl FromStr for FineRefineArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("squared") {
            return Ok(Self(FineRefine::Squared));
        }
        s.parse::<usize>()
            .map(|r| Self(FineRefine::Factor(r)))
            .map_err(|_| format!("expected a positive integer or 'squared', got '{s}'"))
    }
}

impl fmt::Display for FineRefineArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            FineRefine::Factor(r) => write!(f, "{r}"),
            FineRefine::Squared => f.write_str("squared"),
        }
    }
}

impl Serialize for FineRefineArg {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0 {
            FineRefine::Factor(r) => s.serialize_u64(r as u64),
            FineRefine::Squared => s.serialize_str("squared"),
        }
    }
}

/// Everything a run depends on. Serialized as the config echo of the report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentSpec {
    pub experiment: Experiment,
    pub n: usize,
    pub tol: f64,
    #[serde(rename = "N")]
    pub big_n: usize,
    pub m: usize,
    pub fine_refine: FineRefineArg,
    pub sigma: f64,
    pub gamma: f64,
    pub a: [f64; 3],
    pub seed: Option<u64>,
    pub problem: ModelProblem,
    pub ell: Option<usize>,
    pub bvp_tol: f64,
    pub bvp_mesh: usize,
    pub max_terms: usize,
    pub workers: Option<usize>,
    #[serde(skip)]
    pub out_dir: Option<PathBuf>,
    #[serde(skip)]
    pub svg: bool,
}

impl ExperimentSpec {
    /// The paper's parameters for `experiment`; callers override individual fields.
    pub fn defaults(experiment: Experiment) -> Self {
        let mut spec = Self {
            experiment,
            n: 1,
            tol: 1e-12,
            big_n: 1024,
            m: 10,
            fine_refine: FineRefineArg(FineRefine::Squared),
            sigma: 1.0,
            gamma: 0.0,
            a: [1.0, 1.0, 1.0],
            seed: None,
            problem: ModelProblem::One,
            ell: None,
            bvp_tol: nonlocal_core::bvp::DEFAULT_REFINE_TOL,
            bvp_mesh: nonlocal_core::bvp::DEFAULT_INITIAL_MESH,
            max_terms: DEFAULT_MAX_TERMS,
            workers: None,
            out_dir: None,
            svg: false,
        };
        match experiment {
            Experiment::Hessenberg => spec.seed = Some(1),
            Experiment::Circulant => spec.big_n = 1025,
            Experiment::PowerCompare => {
                spec.big_n = 1025;
                spec.n = 2;
                spec.m = 30;
            }
            Experiment::Laplacian => {}
            Experiment::PdeMol => {
                spec.big_n = 1000;
                spec.m = 100;
                spec.tol = 1e-7;
                spec.sigma = 1e-6;
            }
            Experiment::PdeFunctional => {
                spec.n = 2;
                spec.m = 65;
                spec.tol = 1e-7;
                spec.sigma = 1e-2;
                spec.ell = Some(20);
                spec.big_n = 65;
            }
        }
        spec
    }

    pub fn expansion_config(&self) -> Config64 {
        Config64::new(self.n, self.tol, self.m).with_max_terms(self.max_terms).with_fine_refine(self.fine_refine.0)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |msg: String| Err(CliError::InvalidSpec(msg));
        self.expansion_config().validate().map_err(|e| CliError::InvalidSpec(e.to_string()))?;
        if !self.tol.is_finite() {
            return bad(format!("tol must be finite, got {}", self.tol));
        }
        let min_n = match self.experiment {
            Experiment::Hessenberg | Experiment::Laplacian => 2,
            Experiment::Circulant | Experiment::PowerCompare => 3,
            Experiment::PdeMol | Experiment::PdeFunctional => 2,
        };
        if self.big_n < min_n {
            return bad(format!("N must be at least {min_n} for {:?}, got {}", self.experiment, self.big_n));
        }
        if !(self.sigma > 0.0 && self.sigma.is_finite()) {
            return bad(format!("sigma must be positive and finite, got {}", self.sigma));
        }
        if !(self.gamma >= 0.0 && self.gamma.is_finite()) {
            return bad(format!("gamma must be non-negative and finite, got {}", self.gamma));
        }
        if self.a.iter().any(|v| !v.is_finite()) {
            return bad(format!("band coefficients must be finite, got {:?}", self.a));
        }
        if self.experiment == Experiment::Hessenberg && self.seed.is_none() {
            return bad("the hessenberg experiment is randomized and needs --seed".into());
        }
        if self.experiment == Experiment::PdeFunctional {
            if !(self.bvp_tol > 0.0 && self.bvp_tol.is_finite()) {
                return bad(format!("bvp tolerance must be positive, got {}", self.bvp_tol));
            }
            if self.bvp_mesh < nonlocal_core::bvp::MIN_MESH {
                return bad(format!(
                    "bvp mesh must have at least {} interior points, got {}",
                    nonlocal_core::bvp::MIN_MESH,
                    self.bvp_mesh
                ));
            }
        }
        if self.workers == Some(0) {
            return bad("--workers must be at least 1".into());
        }
        Ok(())
    }
}
