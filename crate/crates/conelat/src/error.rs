use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cone is not generating; no upper bound can be constructed")]
    NotGenerating,

    #[error("operation not supported for this cone: {0}")]
    Unsupported(String),

    #[error("{what} did not converge after {iterations} iterations (residual {residual:.3e})")]
    NoConvergence {
        what: &'static str,
        iterations: usize,
        residual: f64,
    },

    #[error("point is not an upper bound (violation {0:.3e})")]
    NotUpperBound(f64),

    #[error("no grid point satisfies the order constraints")]
    EmptyGrid,

    #[error("no sample satisfies the order precondition")]
    EmptySample,

    #[error("operator is not positive")]
    NotPositive,

    #[error("cone is degenerate (contains only the origin)")]
    DegenerateCone,

    /// A quasi-supremum needed by a derived operation was not unique.
    #[error("quasi-supremum not determined: solver status {0:?}")]
    Unresolved(crate::solver::Status),

    #[error("unknown case {0:?}")]
    UnknownCase(String),

    #[error("malformed input: {0}")]
    Schema(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}
