use thiserror::Error;

/// Errors shared across the library's operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Input had fewer entries than the operation requires.
    #[error("input needs at least {min} entries, got {got}")]
    EmptyInput { min: usize, got: usize },
    /// Input contains a NaN or infinity.
    #[error("input contains a non-finite value")]
    NonFiniteInput,
    /// Input contains a negative entry where mass was expected.
    #[error("input entries must be nonnegative")]
    NegativeInput,
    /// Input mass sums to zero (or less), so it cannot be normalized.
    #[error("input must have positive total mass")]
    NonPositiveSum,
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("{what} must lie in [{lo}, {hi}], got {got}")]
    OutOfRange {
        what: &'static str,
        got: f64,
        lo: f64,
        hi: f64,
    },
    #[error("step size must be nonnegative, got {0}")]
    NegativeStep(f64),
    /// The multiplicative update asked for exponent spreads beyond what
    /// double precision can represent; see `dynamics::EXP_SPREAD_LIMIT`.
    #[error("multiplicative update overflow: exponent spread {spread:.3e} exceeds {limit}")]
    Overflow { spread: f64, limit: f64 },
    #[error("contraction ratio is undefined for identical inputs")]
    IdenticalInputs,
    #[error("label {index} out of range for {classes} classes")]
    IndexOutOfRange { index: usize, classes: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
