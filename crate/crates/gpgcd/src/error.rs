//! Error type shared across the library.

use crate::optimizer::IterationState;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("SVD failed to converge")]
    SvdFailed,

    #[error("rank-deficient matrix: effective rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },

    /// The Jacobian of the constraint stack lost full row rank along the
    /// iteration path, which happens when the iterate drifts onto a pair
    /// whose common divisor exceeds the requested degree.
    #[error("constraint Jacobian rank-deficient at iteration {iteration}")]
    JacobianRankDeficient { iteration: usize },

    #[error("did not converge within {max_iterations} iterations (last step norm {:.3e})", last.last_step_norm)]
    NonConvergence {
        max_iterations: usize,
        last: Box<IterationState>,
    },

    #[error("GCD recovery failed: best residual {residual:.3e} exceeds threshold {threshold:.3e}")]
    RecoveryFailed { residual: f64, threshold: f64 },

    #[error("numerical failure: {0}")]
    Numeric(String),
}
