use thiserror::Error;

use crate::complex::VertexSet;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("no facets given")]
    EmptyInput,

    #[error("label {0} appears in both operands of a join")]
    LabelConflict(String),

    #[error("{0} vertices exceed the supported maximum of {max}", max = crate::complex::MAX_VERTICES)]
    TooManyVertices(usize),

    #[error("dimension {requested} is outside the valid range {min}..={max}")]
    DimensionOutOfRange { requested: isize, min: isize, max: isize },

    #[error("vertex selection is empty")]
    EmptySelection,

    #[error("{0:?} is not a face of the complex")]
    NotAFace(VertexSet),

    #[error("characteristic {0} is neither 0 nor a prime below 2^32")]
    InvalidField(u64),

    #[error("degenerate complex: {0}")]
    DegenerateComplex(&'static str),

    #[error("complex is not Cohen-Macaulay over the requested field")]
    NotCM,

    #[error("malformed shift sequence: {0}")]
    MalformedSequence(String),

    #[error("complex is not a matroid complex (impure induced subcomplex on {0:?})")]
    NotAMatroid(VertexSet),

    #[error("complex has dimension {found}, expected one of {expected:?}")]
    WrongDimension { found: isize, expected: Vec<isize> },

    #[error("complex is not Gorenstein* over the requested field")]
    NotGorensteinStar,

    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
