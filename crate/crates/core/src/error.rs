use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid sub-simplex: {0}")]
    InvalidSubSimplex(String),
    #[error("invalid smoothness: {}", .0.join("; "))]
    InvalidSmoothness(Vec<String>),
    #[error("invalid direction: {0}")]
    InvalidDirection(String),
    #[error("nodes are not adjacent: {0}")]
    NotAdjacent(String),
    #[error("detour not available: {0}")]
    DetourUnavailable(String),
    #[error("degenerate geometry: {0}")]
    DegenerateGeometry(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("singular system: {0}")]
    Singular(String),
    #[error("unsupported case: {0}")]
    Unsupported(String),
    #[error("non-conforming assembly: {0}")]
    NonConforming(String),
    #[error("invalid mesh: {0}")]
    InvalidMesh(String),
}

pub type Result<T> = std::result::Result<T, Error>;
