use alloc::boxed::Box;
use alloc::string::String;
use core::fmt;

use nalgebra::DVector;

/// Errors produced by model construction, evaluation and solution.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Parameter coordinate outside the patch.
    Domain { what: &'static str, value: f64 },
    /// Knot vector or control net violates a structural invariant.
    InvalidPatch(String),
    /// Geometric mapping is degenerate (non-positive Jacobian determinant).
    DegenerateGeometry { det: f64 },
    /// Material constants violate positive-definiteness requirements.
    Material(String),
    /// Thickness or interface data is inadmissible.
    Geometry(String),
    /// Analytic thickness builder parameters give non-positive thickness.
    Parameter(String),
    /// Collocation system for thickness fitting could not be solved.
    Fitting(String),
    /// Lamina index outside the layup.
    LaminaIndex { index: usize, count: usize },
    /// Unknown plate edge label.
    UnknownEdge(String),
    /// Cholesky factorization hit a non-positive pivot.
    Factorization { pivot: usize },
    /// LU factorization of an (indefinite) tangent failed.
    SingularTangent,
    /// Generalized eigenproblem has no positive eigenvalue.
    Stability(String),
    /// Mode vector for imperfection seeding has no transverse content.
    ZeroMode,
    /// Newton loop exhausted its iteration budget; carries the last iterate.
    NonConvergence {
        iterations: usize,
        residual: f64,
        last_state: Box<DVector<f64>>,
    },
    /// Arc-length shrank below the underflow floor; a partial path exists.
    ArcLengthUnderflow { steps_completed: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain { what, value } => {
                write!(f, "{what} = {value} lies outside the patch")
            }
            Error::InvalidPatch(msg) => write!(f, "invalid patch: {msg}"),
            Error::DegenerateGeometry { det } => {
                write!(f, "degenerate geometry: Jacobian determinant {det} <= 0")
            }
            Error::Material(msg) => write!(f, "invalid material: {msg}"),
            Error::Geometry(msg) => write!(f, "invalid geometry: {msg}"),
            Error::Parameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::Fitting(msg) => write!(f, "thickness fitting failed: {msg}"),
            Error::LaminaIndex { index, count } => {
                write!(f, "lamina index {index} out of range (layup has {count})")
            }
            Error::UnknownEdge(name) => write!(f, "unknown edge label `{name}`"),
            Error::Factorization { pivot } => {
                write!(f, "factorization failed at pivot {pivot} (matrix not positive definite)")
            }
            Error::SingularTangent => write!(f, "tangent matrix is singular"),
            Error::Stability(msg) => write!(f, "buckling eigenproblem failed: {msg}"),
            Error::ZeroMode => write!(f, "mode shape has no transverse component"),
            Error::NonConvergence { iterations, residual, .. } => {
                write!(f, "no convergence after {iterations} iterations (residual {residual:e})")
            }
            Error::ArcLengthUnderflow { steps_completed } => {
                write!(f, "arc-length underflow after {steps_completed} accepted steps")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
