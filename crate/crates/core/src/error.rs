use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} is outside the vertex range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("complexes are limited to 64 vertices, got {0}")]
    TooManyVertices(usize),
    #[error("a complex with nonempty faces needs at least one vertex")]
    NoVertices,
    #[error("{0:?} is not a face of the complex")]
    NotAFace(Vec<usize>),
    #[error("the right link is only defined for nonempty faces")]
    EmptyFace,
    #[error("revlex comparison needs equal degrees, got {left} and {right}")]
    DegreeMismatch { left: u32, right: u32 },
    #[error("monomials live in different rings ({left} vs {right} variables)")]
    VariableCountMismatch { left: usize, right: usize },
    #[error("{what} = {value} exceeds the configured bound {bound}")]
    BoundExceeded {
        what: &'static str,
        value: usize,
        bound: usize,
    },
    #[error("the target complex is not cointerval")]
    NotCointerval,
    #[error("the complex is a simplex and has no non-face")]
    IsSimplex,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("the complex is empty")]
    EmptyComplex,
    #[error("the cell family is not closed under taking faces: {0}")]
    NotFaceClosed(String),
    #[error("the labeled complex does not support a resolution")]
    SupportFailed,
    #[error("the labeled complex does not support a minimal resolution")]
    MinimalityFailed,
    #[error("partition {0} is nesting")]
    Nesting(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid cell: {0}")]
    InvalidCell(String),
    #[error("parse error: {0}")]
    Parse(String),
}
