use serde::Serialize;
use thiserror::Error;

/// Errors raised by the exact and numerical routines of this crate.
#[derive(Debug, Clone, PartialEq, Error, Serialize)]
#[serde(tag = "kind", content = "detail", rename_all = "snake_case")]
pub enum CoreError {
    #[error("cannot parse {what}: {detail}")]
    Parse { what: &'static str, detail: String },

    #[error("value {0} does not fit in a double")]
    FloatOverflow(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("subspace is not contained in {0}")]
    NotContained(String),

    #[error("filtration is not monotone at index {index}")]
    NotMonotone { index: i64 },

    #[error("morphism is not compatible with filtration {filtration} at level {level}")]
    Incompatible { filtration: &'static str, level: i64 },

    #[error("triple is not opposed: graded piece (r={r}, p={p}, q={q}) has dimension {dim}")]
    NotOpposed { r: i64, p: i64, q: i64, dim: usize },

    #[error("weight filtration level {level} is not stable under conjugation")]
    NotReal { level: i64 },

    #[error("Hodge numbers are not symmetric at ({p}, {q})")]
    HodgeAsymmetry { p: i64, q: i64 },

    #[error("extension lift violates its contract: {0}")]
    LiftContract(String),

    #[error("points {0} and {1} coincide")]
    CoincidentPoints(usize, usize),

    #[error("invalid curve configuration: {0}")]
    InvalidConfig(String),

    #[error("theta vanishes (|theta| < tol) at z = {re} + {im}i")]
    DegenerateTheta { re: f64, im: f64 },

    #[error("theta truncation tail bound {bound:e} exceeds tolerance {tol:e}")]
    Truncation { bound: f64, tol: f64 },

    #[error("family fiber {label}: {source}")]
    Fiber {
        label: String,
        #[source]
        source: Box<CoreError>,
    },

    #[error("family is not weight-locked: fiber {label} has a different graded table")]
    NotWeightLocked { label: String },

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl CoreError {
    /// True for errors caused by well-formed input that fails a mathematical
    /// condition (as opposed to malformed or mis-shaped input).
    pub fn is_domain(&self) -> bool {
        match self {
            CoreError::Parse { .. }
            | CoreError::DimensionMismatch { .. }
            | CoreError::NotMonotone { .. }
            | CoreError::InvalidConfig(_) => false,
            CoreError::Fiber { source, .. } => source.is_domain(),
            _ => true,
        }
    }

    pub(crate) fn parse(what: &'static str, detail: impl Into<String>) -> Self {
        CoreError::Parse {
            what,
            detail: detail.into(),
        }
    }
}

pub type Result<T, E = CoreError> = std::result::Result<T, E>;
