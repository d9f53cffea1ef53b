use thiserror::Error;

/// Errors raised by the decision engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    #[error("wealth must be positive under multiplicative dynamics (got {0})")]
    WealthNonPositive(f64),

    #[error("wealth left the representable range (got {0})")]
    WealthNotFinite(f64),

    #[error("growth rates with different units cannot be compared")]
    UnitsMismatch,

    #[error("the discount function is undefined in case A (no indifference point exists)")]
    UndefinedDiscount,

    #[error("horizon must be positive (got {0})")]
    NonPositiveHorizon(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("no sign change found in [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("root finder did not converge after {0} iterations")]
    MaxIterations(usize),

    #[error("trajectory is degenerate (no elapsed time)")]
    DegenerateTrajectory,
}

pub type Result<T> = std::result::Result<T, Error>;
