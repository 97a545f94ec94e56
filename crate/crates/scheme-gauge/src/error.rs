use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("graph6 parse error at byte {offset}: {msg}")]
    Graph6 { offset: usize, msg: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid named-graph spec: {0}")]
    NamedGraph(String),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("matrix is not symmetric (asymmetry {0:.3e})")]
    NotSymmetric(f64),

    #[error("matrix is not positive semidefinite (lambda_min {0:.3e})")]
    NotPsd(f64),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("linear program error: {0}")]
    Lp(String),

    #[error("configuration is not coherent: {0}")]
    NotCoherent(String),

    #[error("not an association scheme: {0}")]
    NotScheme(String),

    #[error("graph is not distance-regular: vertices {u} and {v} violate constancy at distance {dist}")]
    NotDistanceRegular { u: usize, v: usize, dist: usize },

    #[error("DIMACS parse error at line {line}: {msg}")]
    Dimacs { line: usize, msg: String },

    #[error("instance too large: {0}")]
    TooLarge(String),

    #[error("certificate check failed: {0}")]
    Certificate(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
