use thiserror::Error;

/// Errors raised across the library. Each variant names the violated
/// precondition; numerical detail goes in the payload.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("2x2 complex matrix does not have quaternionic structure (residual {0:e})")]
    MalformedM2C(f64),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("matrix is not hyper-Hermitian (residual {0:e})")]
    NotHyperHermitian(f64),
    #[error("complex-embedding spectrum does not pair up (gap {0:e})")]
    PairingFailure(f64),
    #[error("inverse square root of a matrix with eigenvalue {0:e}")]
    SingularInvSqrt(f64),
    #[error("matrix is not in Sp(n) (residual {0:e})")]
    NotGroupElement(f64),
    #[error("denominator is singular (condition number {0:e})")]
    SingularDenominator(f64),
    #[error("degenerate quadruple: a difference is singular")]
    DegenerateQuadruple,
    #[error("shape mismatch: expected {expected:?}, got {got:?}")]
    ShapeMismatch {
        expected: (usize, usize),
        got: (usize, usize),
    },
    #[error("tangent directions are linearly dependent")]
    DependentDirections,
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("commutator left a second-order residue")]
    SecondOrderResidue,
    #[error("polynomial is not an eigenvector of the Cartan element")]
    NotEigenvector,
    #[error("point lies on a chart boundary: {0}")]
    ChartBoundary(String),
    #[error("omega = {0} is inside the pole exclusion zone")]
    TooCloseToPole(f64),
    #[error("series termination condition violated for l = {ell}, N = {n}")]
    TerminationViolated { ell: f64, n: u32 },
    #[error("generator is not skew-adjoint (residual {0:e})")]
    NotSkewAdjoint(f64),
    #[error("quaternion is not a unit (norm^2 = {0})")]
    NotUnitQuaternion(f64),
    #[error("partition does not conform: {0}")]
    PartitionMismatch(String),
    #[error("invalid rank: {0}")]
    InvalidRank(String),
    #[error("unsupported weight count {0} (expected 1, 2 or 3 constituents)")]
    UnsupportedWeightCount(usize),
    #[error("sphere dimension {0} is not an even number >= 2")]
    OddDimension(usize),
    #[error("unknown suite '{0}'")]
    UnknownSuite(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
