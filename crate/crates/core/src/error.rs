use thiserror::Error;

use crate::complex::Simplex;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("facet {index} is empty")]
    EmptyFacet { index: usize },
    #[error("facet {index} repeats vertex {vertex}")]
    DuplicateVertex { index: usize, vertex: u32 },
    #[error("vertex {0} is not in the complex")]
    UnknownVertex(u32),
    #[error("simplex {0} is not a face of the complex")]
    NotAFace(Simplex),
    #[error("simplex {0} has dimension below 1 and cannot be stellar-subdivided")]
    SubdivisionTooSmall(Simplex),
    #[error("the empty complex has no Euler characteristic")]
    EmptyComplex,
    #[error("complex of dimension {complex_dim} exceeds the coefficient range (max index {max_index})")]
    DimensionOutOfRange { complex_dim: i32, max_index: i32 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("degenerate simplex {simplex}: normalized Gram determinant {measure:e}")]
    Degenerate { simplex: Simplex, measure: f64 },
    #[error("coordinates: {0}")]
    Coordinates(String),
    #[error("complex is not a {0}-dimensional pseudomanifold")]
    NotPseudomanifold(i32),
    #[error("cannot parse rational {0:?}")]
    ParseRational(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
