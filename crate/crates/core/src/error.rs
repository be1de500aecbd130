use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("Fock cutoff {cutoff} leaves tail mass {tail:.3e} above tolerance {tolerance:.1e}")]
    InsufficientTruncation {
        cutoff: usize,
        tail: f64,
        tolerance: f64,
    },

    #[error("degenerate state: {0}")]
    DegenerateState(String),

    #[error("mode index {index} out of range for {modes} modes")]
    IndexOutOfRange { index: usize, modes: usize },

    #[error("matrix is not positive semidefinite (smallest eigenvalue {min_eigenvalue:.6e})")]
    PsdViolation { min_eigenvalue: f64 },

    #[error("matrix is singular (smallest |eigenvalue| {min_abs_eigenvalue:.3e})")]
    SingularMatrix { min_abs_eigenvalue: f64 },

    #[error("expected a {expected}x{expected} matrix, got {actual}x{actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("division by zero: `{0}` vanishes")]
    DivisionByZero(&'static str),

    #[error("phase derivative of the signal vanishes ({derivative:.3e})")]
    ZeroDerivative { derivative: f64 },

    #[error("printed marginal is negative ({value:.3e}) at p = {p}")]
    NegativeMarginal { p: f64, value: f64 },

    #[error("quadrature grid inadequate: refinement shifted result by {shift:.3e}")]
    GridInadequate { shift: f64 },
}
