use thiserror::Error;

/// Indices carried by errors are 1-based, matching the basis labels
/// `e_1, ..., e_n` used in the JSON documents and reports.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid scalar literal {0:?}")]
    BadScalar(String),

    #[error("Jacobi identity fails on basis triple ({i},{j},{k})")]
    JacobiViolation { i: usize, j: usize, k: usize },
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("bracket entry ({i},{j}) must satisfy i < j")]
    BadBracketOrder { i: usize, j: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("vectors are linearly dependent")]
    LinearlyDependent,

    #[error("J^2 != -I (first bad entry at row {row}, column {col})")]
    NotAlmostComplex { row: usize, col: usize },
    #[error("relations do not determine an almost complex structure: {0}")]
    BadRelations(String),
    #[error("matrix is not an automorphism of the Lie algebra")]
    NotAnAutomorphism,

    #[error("J is not integrable (Nijenhuis tensor nonzero on (e_{i}, e_{j}))")]
    NotIntegrable { i: usize, j: usize },
    #[error("2-form is not closed (d omega nonzero on ({i},{j},{k}))")]
    NotClosed { i: usize, j: usize, k: usize },
    #[error("2-form is not compatible with J")]
    NotCompatible,
    #[error("2-form is degenerate")]
    Degenerate,
    #[error("metric is degenerate")]
    DegenerateMetric,
    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("subspace is not a Walker witness (null: {null}, parallel: {parallel})")]
    NotWalker { null: bool, parallel: bool },
    #[error("W + JW is not a direct sum decomposition of the algebra")]
    NotDirectSum,
    #[error("associated 2-form {0} is not closed")]
    ClosednessFailed(String),
    #[error("hypersymplectic identity {0} fails")]
    HypersymplecticCheck(String),

    #[error("unknown catalog entry {0:?}")]
    UnknownName(String),
    #[error("catalog entry {0:?} is a builder hook, not a fixture")]
    NotAFixture(String),
    #[error("missing parameter {param:?} for {name}")]
    MissingParam { name: String, param: String },
    #[error("unexpected parameter {param:?} for {name}")]
    UnexpectedParam { name: String, param: String },
    #[error("parameter {param} out of range for {name}: requires {range}")]
    ParamOutOfRange {
        name: String,
        param: String,
        range: String,
    },
    #[error("no structure {id:?} registered for {name}")]
    UnknownStructure { name: String, id: String },
    #[error("catalog fixture {0} fails its own checks")]
    FixtureCheck(String),

    #[error("algebra is not commutative on ({i},{j})")]
    NotCommutative { i: usize, j: usize },
    #[error("algebra is not associative on ({i},{j},{k})")]
    NotAssociative { i: usize, j: usize, k: usize },
    #[error("invalid realification: {0}")]
    InvalidRealification(String),
    #[error("construction check failed: {0}")]
    ConstructionCheck(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("schema error: {0}")]
    Schema(String),
}

impl Error {
    /// Name of the subsystem an error originates from.
    pub fn module(&self) -> &'static str {
        use Error::*;
        match self {
            BadScalar(_) | Parse { .. } | Schema(_) => "io",
            JacobiViolation { .. }
            | IndexOutOfRange { .. }
            | BadBracketOrder { .. }
            | DimensionMismatch { .. }
            | SingularMatrix
            | LinearlyDependent => "lie_core",
            NotAlmostComplex { .. } | BadRelations(_) | NotAnAutomorphism => "complex_structures",
            NotIntegrable { .. }
            | NotClosed { .. }
            | NotCompatible
            | Degenerate
            | DegenerateMetric
            | NotSymmetric => "pseudo_riemannian",
            PreconditionFailed(_)
            | NotWalker { .. }
            | NotDirectSum
            | ClosednessFailed(_)
            | HypersymplecticCheck(_) => "classification",
            UnknownName(_)
            | NotAFixture(_)
            | MissingParam { .. }
            | UnexpectedParam { .. }
            | ParamOutOfRange { .. }
            | UnknownStructure { .. }
            | FixtureCheck(_) => "catalog",
            NotCommutative { .. }
            | NotAssociative { .. }
            | InvalidRealification(_)
            | ConstructionCheck(_) => "affine_construction",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
