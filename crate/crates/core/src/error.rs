use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Broad failure class, used by front ends to pick an exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Validation,
    Numerical,
    Infeasible,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension must be 1, 2 or 3, got {0}")]
    InvalidDimension(u32),
    #[error("atoms per side must be even, got {0}")]
    OddSideLength(i64),
    #[error("atoms per side must be positive, got {0}")]
    NonPositiveSideLength(i64),
    #[error("lattice constant k0*a must exceed 1, got {0}")]
    LatticeConstantTooSmall(f64),
    #[error("a polar angle is required for d = 3")]
    MissingTheta,
    #[error("wavevector magnitude/angle inconsistent with its components: {0}")]
    InconsistentWavevector(String),
    #[error("coupling exponent alpha must be >= 0, got {0}")]
    NegativeAlpha(f64),
    #[error("coupling strength {re}{im:+}i violates the d = {dim} constraint ({constraint})")]
    StrengthConstraint {
        dim: u32,
        re: f64,
        im: f64,
        constraint: &'static str,
    },
    #[error("coupling of coincident sites (r = 0) is undefined")]
    CoincidentSites,
    #[error("{atoms} atoms exceed the dense-matrix limit of {limit}")]
    TooManyAtoms { atoms: usize, limit: usize },
    #[error("matrix must be square, got {rows}x{cols}")]
    NonSquareMatrix { rows: usize, cols: usize },
    #[error("matrix contains non-finite entries")]
    NonFiniteInput,
    #[error("eigendecomposition failed (relative residual {residual:.3e})")]
    Diagonalization { residual: f64 },
    #[error("superradiance constraint 0 <= alpha < (d+1)/2 violated for d = {dim}, alpha = {alpha}")]
    ConstraintViolated { dim: u32, alpha: f64 },
    #[error("quadrature budget exhausted: estimate {estimate} with error bound {error_bound:e}")]
    QuadratureBudget { estimate: Complex64, error_bound: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("infeasible design: {0}")]
    Infeasible(String),
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Diagonalization { .. } | Error::QuadratureBudget { .. } => ErrorClass::Numerical,
            Error::Infeasible(_) => ErrorClass::Infeasible,
            _ => ErrorClass::Validation,
        }
    }
}
