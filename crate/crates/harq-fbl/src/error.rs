//! Crate-wide error type.

use thiserror::Error;

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An input violated a documented precondition.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Adaptive quadrature exhausted its evaluation budget before reaching
    /// the requested tolerance.
    #[error(
        "quadrature did not converge: error estimate {error_estimate:.3e} above target \
         {target:.3e} after {evaluations} evaluations"
    )]
    NonConvergence {
        error_estimate: f64,
        target: f64,
        evaluations: usize,
    },

    /// The alternating high-SNR series lost too much precision to cancellation
    /// or overflowed; fall back to the quadrature or linearized estimator.
    #[error("high-SNR series unstable: {0}")]
    SeriesUnstable(String),

    /// The continued-fraction evaluation of the upper incomplete gamma
    /// function failed for every epsilon in the grid.
    #[error("incomplete-gamma kernel failed to converge")]
    GammaKernelFailure,

    /// Outage probabilities must be non-increasing in the round index; a
    /// violation indicates an estimator bug upstream.
    #[error("outage vector is not non-increasing at round {round}: {prev} -> {next}")]
    NonMonotoneOutage { round: usize, prev: f64, next: f64 },

    /// A round index outside 1..=M.
    #[error("round index {index} out of range 1..={max_rounds}")]
    RoundIndexOutOfRange { index: usize, max_rounds: usize },

    /// The optimizer's search bounds exclude every admissible scheme.
    #[error("no feasible scheme inside the search bounds: {0}")]
    EmptyFeasibleSet(String),

    /// Command-line / config-file usage error.
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
