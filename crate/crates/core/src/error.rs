use thiserror::Error;

/// Errors raised by the distribution routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SkdError {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A distribution parameter violates its validity constraints.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The density has an integrable singularity at the requested point.
    #[error("density is singular at x = {at}")]
    Singularity { at: f64 },

    /// An iterative routine exhausted its budget. `estimate` is the best
    /// value reached and `error` its estimated absolute error.
    #[error("{routine} did not converge (best estimate {estimate:e}, error estimate {error:e})")]
    Convergence {
        routine: &'static str,
        estimate: f64,
        error: f64,
    },

    /// The result is too large to represent as an `f64`.
    #[error("overflow in {0}")]
    Overflow(&'static str),

    /// The request is well-formed but outside what the formulas support.
    #[error("unsupported parameter: {0}")]
    Unsupported(String),

    /// Sample moments cannot be produced by any member of the family.
    #[error("infeasible moments: {0}")]
    InfeasibleMoments(String),
}

pub type Result<T> = std::result::Result<T, SkdError>;

pub(crate) fn domain(msg: impl Into<String>) -> SkdError {
    SkdError::Domain(msg.into())
}
