use thiserror::Error;

/// Errors produced by the exact toolkit.
#[derive(Error, Debug)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("not a subspace inclusion: {0}")]
    NotContained(String),
    #[error("singular block matrix: no dual basis for simplex {0:?}")]
    NoDual(Vec<usize>),
    #[error("dual solution leaves the ring: {0}")]
    NonRingElement(String),
    #[error("simplex {0:?} is not in the fan")]
    InvalidSimplex(Vec<usize>),
    #[error("ray {0} is out of range or has no data")]
    UnknownRay(usize),
    #[error("Klyachko data violates an invariant: {0}")]
    BadData(String),
    #[error("data is not compatible: {0}")]
    Incompatible(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("fan precondition failed: {0}")]
    Precondition(String),
    #[error("holomorphic degeneration error: {0}")]
    NotHolomorphic(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
