use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix of shape {rows}x{cols} cannot hold {len} entries")]
    Shape {
        rows: usize,
        cols: usize,
        len: usize,
    },
    #[error("operation needs a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("cannot parse integer entry {0:?}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("relation matrix has {rows} rows but the group has {generators} generators")]
    RelationShape { generators: usize, rows: usize },
    #[error("morphism matrix is {rows}x{cols}, expected {expected_rows}x{expected_cols}")]
    MatrixShape {
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },
    #[error(
        "matrix does not send relation column {column} of the source into the target relations"
    )]
    IllDefined { column: usize },
    #[error("composition of consecutive maps is not zero")]
    CompositionNotZero,
    #[error("groups of consecutive maps do not match: {0}")]
    DomainMismatch(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StationaryError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("graph is not essential: vertex {vertex:?} lacks an {missing} edge")]
    NotEssential {
        vertex: String,
        missing: &'static str,
    },
    #[error("differential out of degree {degree} does not commute with the endomorphisms")]
    NotEquivariant { degree: i64 },
    #[error("d∘d ≠ 0 at degree {degree}")]
    CompositionNotZero { degree: i64 },
    #[error("endomorphism must map the stage to itself")]
    NotEndomorphism,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("duplicate id {0:?}")]
    DuplicateId(String),
    #[error("edge {edge:?} refers to unknown vertex {vertex:?}")]
    UnknownVertex { edge: String, vertex: String },
    #[error("unknown id {0:?} in a class list")]
    UnknownId(String),
    #[error("id {0:?} appears in more than one class")]
    RepeatedInPartition(String),
    #[error("id {0:?} is missing from the class lists")]
    MissingFromPartition(String),
    #[error("empty class in a class list")]
    EmptyClass,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymbolicError {
    #[error("presentation is invalid: {0}")]
    PresentationInvalid(String),
    #[error("face index {index} out of range for shape ({l}, {m})")]
    IndexOutOfRange { index: usize, l: usize, m: usize },
    #[error("face map {face} at cell ({l}, {m}) does not commute with the stage endomorphism")]
    NotEquivariant { face: String, l: usize, m: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A violated identity of the double complex; no homology is reported once
/// one of these fires.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("guardrail failure: {identity} at cell ({l}, {m})")]
pub struct GuardrailFailure {
    pub identity: String,
    pub l: usize,
    pub m: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error(transparent)]
    Guardrail(#[from] GuardrailFailure),
    #[error(transparent)]
    Stationary(#[from] StationaryError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not unimodular: |det| = {det}")]
    NotUnimodular { det: String },
    #[error("matrix is not hyperbolic: {0}")]
    NotHyperbolic(String),
    #[error("degree {degree} carries no finite rank")]
    InfiniteRank { degree: i64 },
    #[error(transparent)]
    Symbolic(#[from] SymbolicError),
    #[error(transparent)]
    Stationary(#[from] StationaryError),
}
