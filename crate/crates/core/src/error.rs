use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex id {id} out of range for n = {n}")]
    IdOutOfRange { id: usize, n: usize },

    #[error("self-loop at vertex {vertex}")]
    SelfLoop { vertex: usize },

    #[error("duplicate edge ({u}, {v})")]
    DuplicateEdge { u: usize, v: usize },

    #[error("edge ({u}, {v}) closes a cycle")]
    HasCycle { u: usize, v: usize },

    #[error("graph is not connected: vertex {vertex} unreachable from vertex 0")]
    NotConnected { vertex: usize },

    #[error("need at least 2 vertices, got {n}")]
    DegenerateSize { n: usize },

    #[error("bad parameter: {0}")]
    BadParameter(String),

    #[error("vertex {vertex} has degree {degree} > s = {s}")]
    DegreeExceedsS {
        vertex: usize,
        degree: usize,
        s: usize,
    },

    #[error("projected size {projected} exceeds the explicit-construction cap {cap}")]
    SizeCapExceeded { projected: String, cap: usize },

    #[error("{n} vertices exceed the exact-solve cap {cap}")]
    TooLargeForExactSolve { n: usize, cap: usize },

    #[error("{n} vertices exceed the dense-matrix cap {cap}")]
    DenseCapExceeded { n: usize, cap: usize },

    #[error("shifted Laplacian solve is ill-conditioned (residual {residual:e})")]
    IllConditioned { residual: f64 },

    #[error("source and target are the same vertex {0}")]
    SameSourceTarget(usize),

    #[error("x(x-3)(x-{}) = {parent} has no three real roots", .s + 1)]
    NoThreeRealRoots { parent: f64, s: usize },

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors that stem from a size or resource cap.
    pub fn is_cap(&self) -> bool {
        matches!(
            self,
            Error::SizeCapExceeded { .. }
                | Error::TooLargeForExactSolve { .. }
                | Error::DenseCapExceeded { .. }
        )
    }
}
