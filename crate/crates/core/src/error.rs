use alloc::string::String;
use core::fmt;

/// Errors raised by the exact arithmetic, decision and construction routines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Division by zero, or inversion of the zero scalar.
    DivisionByZero,
    /// Two operands belong to different fields.
    FieldMismatch,
    /// A prime-field modulus failed the primality check.
    NotPrime(u64),
    /// Scalar text could not be parsed.
    ParseScalar(String),
    /// Operand shapes are not conformable.
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    /// A square matrix was required.
    NotSquare { rows: usize, cols: usize },
    /// The matrix has no inverse.
    SingularMatrix,
    /// Subspaces live in different ambient spaces.
    AmbientMismatch { left: usize, right: usize },
    /// The matrix is not nilpotent.
    NotNilpotent,
    /// Jordan blocks handled by the shuffle construction need order at least 2.
    BadBlockSize(usize),
    /// Parameters violate the documented ordering or range constraints.
    BadParameters(String),
    /// A requested square-zero nullity lies outside the legal interval.
    BadRank(String),
    /// The requested factorization does not exist.
    Infeasible(String),
    /// An emitted witness failed its own verification. Always a defect.
    ConstructionError(String),
    /// Only zero, one or two square-zero factors are supported.
    UnsupportedFactorShape(usize),
    /// A factor scalar was zero.
    ZeroScalar,
    /// The scaled target is not idempotent, so no constructive path applies.
    NotScaledIdempotent,
    /// No construction is available for this factor shape; only the decision is.
    DecisionOnly(String),
    /// Exhaustive enumeration over this domain is not tractable.
    DomainTooLarge { modulus: u64, order: usize },
    /// The requested random-instance layout is inconsistent.
    BadTarget(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::FieldMismatch => write!(f, "operands belong to different fields"),
            Error::NotPrime(p) => write!(f, "modulus {p} is not prime"),
            Error::ParseScalar(s) => write!(f, "cannot parse scalar: {s}"),
            Error::ShapeMismatch { left, right } => write!(
                f,
                "shape mismatch: {}x{} vs {}x{}",
                left.0, left.1, right.0, right.1
            ),
            Error::NotSquare { rows, cols } => {
                write!(f, "expected a square matrix, got {rows}x{cols}")
            }
            Error::SingularMatrix => write!(f, "matrix is singular"),
            Error::AmbientMismatch { left, right } => {
                write!(f, "subspaces live in dimensions {left} and {right}")
            }
            Error::NotNilpotent => write!(f, "matrix is not nilpotent"),
            Error::BadBlockSize(k) => write!(f, "Jordan block size {k} is below 2"),
            Error::BadParameters(s) => write!(f, "bad parameters: {s}"),
            Error::BadRank(s) => write!(f, "illegal factor rank: {s}"),
            Error::Infeasible(s) => write!(f, "infeasible: {s}"),
            Error::ConstructionError(s) => write!(f, "construction self-check failed: {s}"),
            Error::UnsupportedFactorShape(l) => write!(
                f,
                "{l} square-zero factors requested; only 0, 1 or 2 are supported"
            ),
            Error::ZeroScalar => write!(f, "factor scalars must be nonzero"),
            Error::NotScaledIdempotent => {
                write!(f, "c*G is not idempotent; no constructive path for this target")
            }
            Error::DecisionOnly(s) => write!(f, "no construction available: {s}"),
            Error::DomainTooLarge { modulus, order } => write!(
                f,
                "enumeration over {order}x{order} matrices mod {modulus} is too large"
            ),
            Error::BadTarget(s) => write!(f, "bad instance target: {s}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T, E = Error> = core::result::Result<T, E>;
