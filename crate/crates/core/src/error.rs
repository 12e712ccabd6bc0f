use thiserror::Error;

use crate::graph::{OuterplanarViolation, ParseError};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("graph is not outerplanar: {0}")]
    NotOuterplanar(OuterplanarViolation),

    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("root {0} is a cut vertex")]
    CutVertexRoot(usize),

    #[error("diameter bound must be at least 1")]
    InvalidBound,

    #[error("{{{0}, {1}}} is not an edge")]
    NotAnEdge(usize, usize),

    #[error("instance is infeasible at the requested diameter bound")]
    Infeasible,

    #[error("oracle refuses n = {n}: enumeration is capped at {cap} vertices")]
    OracleCap { n: usize, cap: usize },

    #[error("graph is not maximal outerplanar: {0}")]
    NotMaximalOuterplanar(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("failed to build a verified completion: {0}")]
    Reconstruction(String),
}
