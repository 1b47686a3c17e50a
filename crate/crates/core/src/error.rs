use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not Hermitian (max asymmetry {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("Jacobi eigensolver did not converge within {sweeps} sweeps (off-diagonal norm {residual:e})")]
    NoConvergence { sweeps: usize, residual: f64 },

    #[error("not a permutation of 0..{len}: {perm:?}")]
    InvalidPermutation { perm: Vec<usize>, len: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid prior pair ({eta1}, {eta2}): need non-negative values summing to 1")]
    InvalidPriors { eta1: f64, eta2: f64 },

    #[error("prior ordering violated: construction requires eta1 <= eta2, got ({eta1}, {eta2})")]
    PriorOrder { eta1: f64, eta2: f64 },

    #[error("POVM element spectrum [{min}, {max}] leaves [0, 1]")]
    InvalidPovmElement { min: f64, max: f64 },

    #[error("sector trace {trace} for {sector} is not an integer")]
    NonIntegralTrace { sector: &'static str, trace: f64 },

    #[error("eigenspace multiplicity for {what}: expected {expected}, found {found}")]
    MultiplicityMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("construction check {check} failed (residual {residual:e})")]
    CheckFailed { check: &'static str, residual: f64 },

    #[error("every measurement branch has vanishing probability")]
    DegenerateOutcome,

    #[error("measurement projectors are not complete: total probability {total}")]
    IncompleteMeasurement { total: f64 },

    #[error("invalid layout: {0}")]
    InvalidLayout(String),
}
