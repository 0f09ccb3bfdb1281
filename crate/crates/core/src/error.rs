use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {0} out of range for {1} vertices")]
    VertexOutOfRange(usize, usize),

    #[error("edge {0:?} is not a set of {1} distinct vertices")]
    MalformedEdge(Vec<usize>, usize),

    #[error("rank must be at least {min}, got {got}")]
    RankTooSmall { min: usize, got: usize },

    #[error("requested {requested} edges but only {available} {r}-subsets exist")]
    TooManyEdges {
        requested: usize,
        available: usize,
        r: usize,
    },

    #[error("hypergraph has no edges")]
    NoEdges,

    #[error("graph has no {0}-cliques")]
    NoCliques(usize),

    #[error("graph has no triangle")]
    NoTriangle,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is not symmetric (max asymmetry {0:e})")]
    NotSymmetric(f64),

    #[error("graph too large for exhaustive search: {n} vertices exceeds limit {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("rank mismatch: host rank {host} requires pattern rank {expected}, got {got}")]
    RankMismatch {
        host: usize,
        expected: usize,
        got: usize,
    },

    #[error("embedding search limit exceeded: {0}")]
    SearchLimitExceeded(String),

    #[error("edges {0:?} and {1:?} share more than two vertices")]
    IntersectionTooLarge(Vec<usize>, Vec<usize>),

    #[error("invalid 2-distance representation: {0}")]
    InvalidRepresentation(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
