use thiserror::Error;

/// Failure modes of the expansion engine and its backends.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("Bernoulli degree {degree} exceeds table maximum {max}")]
    DegreeOverflow { degree: usize, max: usize },

    #[error("argument lies within the pole-exclusion radius of 2*pi*i*{k}")]
    NearPole { k: i64 },

    #[error("shifted system (A -/+ {k}i I) is ill-conditioned (pivot ratio {ratio:.3e})")]
    IllConditionedResolvent { k: usize, ratio: f64 },

    #[error("stopping test not met at coarse point {point} (t = {t}) within {max_terms} terms")]
    TermBudgetExhausted { max_terms: usize, point: usize, t: f64 },

    #[error("reference solution vanishes at t = {t}; relative error undefined")]
    DivisionGuard { t: f64 },

    #[error("boundary value problem is ill-conditioned (pivot ratio {ratio:.3e})")]
    IllConditionedBvp { ratio: f64 },

    #[error("mesh refinement budget exhausted at M = {mesh} (estimate {estimate:.3e})")]
    MeshBudget { mesh: usize, estimate: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
