use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix contains non-finite entries")]
    NonFinite,

    #[error("time must be nonnegative, got {0}")]
    NegativeTime(f64),

    #[error("matrix is singular or too ill-conditioned (condition estimate {0:e})")]
    IllConditioned(f64),

    #[error(
        "Lyapunov operator is near-singular: eigenvalues {lambda_i} (#{i}) and {lambda_j} (#{j}) \
         give lambda_i + conj(lambda_j) = {sum:e}"
    )]
    NearResonance {
        i: usize,
        j: usize,
        lambda_i: Complex64,
        lambda_j: Complex64,
        sum: f64,
    },

    #[error("generator is not dissipative: smallest eigenvalue of -A - A^dagger is {0:e}")]
    NotDissipative(f64),

    #[error("eigenvalue {0} on the imaginary axis is not semisimple (residual {1:e})")]
    NotSemisimple(Complex64, f64),

    #[error("matrix is not Hermitian (deviation {0:e})")]
    NotHermitian(f64),

    #[error("correlation matrix spectrum [{min}, {max}] leaves the admissible interval")]
    SpectrumOutOfRange { min: f64, max: f64 },

    #[error(
        "no unique steady state: {} eigenvalue(s) on the imaginary axis {eigenvalues:?}; \
         use the asymptotic decomposition instead",
        eigenvalues.len()
    )]
    NoUniqueSteadyState { eigenvalues: Vec<Complex64> },

    #[error("mode count {n} outside the supported range 1..={max}")]
    ModeCount { n: usize, max: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("postcondition failed: {what} (value {value:e})")]
    Postcondition { what: &'static str, value: f64 },

    #[error("eigendecomposition failed to converge")]
    NoConvergence,
}
