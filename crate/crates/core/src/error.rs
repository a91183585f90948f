use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch in {op}: {detail}")]
    DimensionMismatch { op: &'static str, detail: String },

    #[error("malformed RBMAT input: {0}")]
    Parse(String),

    #[error("problem assumption violated: {0}")]
    AssumptionViolated(String),

    /// The leading/trailing singular value gap is too small for a unique
    /// solution.
    #[error(
        "gap condition failed: sigma[{index}] - sigma[{next}] = {gap:e} <= threshold {threshold:e}"
    )]
    GapConditionFailed {
        index: usize,
        next: usize,
        gap: f64,
        threshold: f64,
    },

    #[error("trailing block is not invertible (condition estimate {condition:e} > {limit:e})")]
    BlockNotInvertible { condition: f64, limit: f64 },

    #[error("degenerate spectrum: smallest retained singular value {sigma:e} <= {threshold:e}")]
    DegenerateSpectrum { sigma: f64, threshold: f64 },

    #[error("condition number undefined: {0}")]
    ConditioningUndefined(String),

    #[error("dense construction of {rows}x{cols} exceeds the {limit} entry limit")]
    SizeLimit {
        rows: usize,
        cols: usize,
        limit: usize,
    },

    #[error("iteration did not converge after {iterations} steps (best estimate {estimate:e})")]
    NotConverged { iterations: usize, estimate: f64 },

    #[error("zero denominator: {0}")]
    ZeroDenominator(&'static str),
}

impl Error {
    /// True for failures caused by the input violating a solver
    /// precondition, as opposed to malformed data.
    pub fn is_solver_assumption(&self) -> bool {
        matches!(
            self,
            Error::AssumptionViolated(_)
                | Error::GapConditionFailed { .. }
                | Error::BlockNotInvertible { .. }
                | Error::DegenerateSpectrum { .. }
                | Error::ConditioningUndefined(_)
                | Error::SizeLimit { .. }
                | Error::NotConverged { .. }
                | Error::ZeroDenominator(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn dim_err(op: &'static str, detail: impl Into<String>) -> Error {
    Error::DimensionMismatch {
        op,
        detail: detail.into(),
    }
}
