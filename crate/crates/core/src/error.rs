use thiserror::Error;

/// Errors raised by the exact and floating-point pipelines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("malformed fan: {0}")]
    MalformedFan(String),

    #[error("support function is not convex across cones {cone_a} and {cone_b} (ray {ray})")]
    NotConvex {
        cone_a: usize,
        cone_b: usize,
        ray: usize,
    },

    #[error("polyhedron is unbounded: {0}")]
    Unbounded(String),

    #[error("polytope is not full-dimensional (affine dimension {affine_dim} in ambient dimension {ambient_dim})")]
    LowerDimensional { affine_dim: usize, ambient_dim: usize },

    #[error("polytope is empty")]
    EmptyPolytope,

    #[error("support does not affinely span the ambient space: {0}")]
    DegenerateSupport(String),

    #[error("subdivision is not a triangulation")]
    NotTriangulation,

    #[error("epsilon must be positive, got {0}")]
    InvalidEps(f64),

    #[error("no cloud point or no tropical sample falls inside the window")]
    EmptyWindow,

    #[error("point is not on the zero locus (relative residual {0:e})")]
    NotOnZeroLocus(f64),

    #[error("critical point: |df| = {0:e}")]
    CriticalPoint(f64),

    #[error("degenerate triple: l1 = l3 = {0}")]
    DegenerateTriple(i64),

    #[error("twists do not compose: ({0},{1}) then ({2},{3})")]
    TwistMismatch(i64, i64, i64, i64),

    #[error("associativity violated: {0}")]
    AssociativityViolation(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
