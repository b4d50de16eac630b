//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Argument outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Adaptive quadrature exhausted its subdivision budget.
    #[error(
        "quadrature did not converge: error estimate {error_estimate:.3e} \
         (worst subinterval [{lower:.6e}, {upper:.6e}]) after {subdivisions} subdivisions"
    )]
    QuadratureConvergence {
        lower: f64,
        upper: f64,
        error_estimate: f64,
        subdivisions: usize,
    },

    /// An integral or sum required to be finite failed to converge.
    #[error("divergent quantity: {0}")]
    Divergence(String),

    /// No sampling path is available for the requested distribution.
    #[error("sampler unavailable: {0}")]
    UnsupportedSampler(String),

    /// Iterative fitting or root finding failed.
    #[error("did not converge: {0}")]
    NonConvergence(String),

    /// Malformed or inconsistent input data.
    #[error("invalid data: {0}")]
    InvalidData(String),
}

pub type Result<T> = std::result::Result<T, Error>;
