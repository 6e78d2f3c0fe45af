use thiserror::Error;

/// Errors raised by the numerical kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("exponent set is empty")]
    EmptyExponents,

    #[error("exponents {first} and {second} are closer than {threshold:e} (distance {distance:e})")]
    DegenerateExponents {
        first: usize,
        second: usize,
        distance: f64,
        threshold: f64,
    },

    #[error("coefficient count {coeffs} does not match exponent count {exponents}")]
    LengthMismatch { exponents: usize, coeffs: usize },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("integral diverges: {0}")]
    DivergentIntegral(String),

    #[error("quadrature did not converge after {panels} panels (last estimate {estimate:e})")]
    QuadratureFailure { panels: usize, estimate: f64 },

    #[error("matrix is not positive definite (pivot {pivot:e} at index {index})")]
    NotPositiveDefinite { index: usize, pivot: f64 },

    #[error("condition number {condition:e} exceeds the limit {limit:e}")]
    ConditionExceeded { condition: f64, limit: f64 },

    #[error("Jacobi eigensolver did not converge in {sweeps} sweeps")]
    EigenFailure { sweeps: usize },

    #[error("exponent set is not in class {expected}")]
    WrongClass { expected: &'static str },

    #[error("dual vector entry overflows (log-magnitude {log_magnitude:.1})")]
    OverflowGuard { log_magnitude: f64 },

    #[error("minimax iteration stalled after {iterations} iterations (best value {best})")]
    MinimaxStall { best: f64, iterations: usize },

    #[error("i/o error: {0}")]
    Io(String),

    #[error("malformed input: {0}")]
    Parse(String),
}

impl Error {
    /// True for failures that come from floating-point limits rather than bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::QuadratureFailure { .. }
                | Error::NotPositiveDefinite { .. }
                | Error::ConditionExceeded { .. }
                | Error::EigenFailure { .. }
                | Error::OverflowGuard { .. }
                | Error::MinimaxStall { .. }
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
