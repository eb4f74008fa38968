use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("({u}, {v}) is not an edge")]
    NotAnEdge { u: usize, v: usize },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),

    #[error("both polynomials are zero")]
    ZeroPolynomials,

    #[error("polynomial is not a perfect square")]
    NotASquare,

    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),

    #[error("repeated poles in denominator")]
    RepeatedPoles,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("laplacian model requires integer weights")]
    NonIntegerWeights,

    #[error("negative residue {0} beyond tolerance")]
    NegativeResidue(f64),

    #[error("structural hypothesis not met: {0}")]
    Structure(String),
}

pub type Result<T> = std::result::Result<T, Error>;
