use thiserror::Error;

/// Errors raised by the library. Parse errors carry the 1-based line number.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("expected a set of {expected} vertices, got {got}")]
    WrongSetSize { expected: usize, got: usize },

    #[error("edge {0:?} repeats a vertex")]
    RepeatedVertex(Vec<u32>),

    #[error("duplicate edge {0:?}")]
    DuplicateEdge(Vec<u32>),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("{what} {value} exceeds the supported cap {cap}")]
    ExceedsCap { what: &'static str, value: u64, cap: u64 },

    #[error("unsupported projective plane order {0}")]
    UnsupportedOrder(u64),

    #[error("value out of domain: {0}")]
    Domain(String),

    #[error("hypergraph is not intersecting")]
    NotIntersecting,
}

pub type Result<T> = std::result::Result<T, Error>;
