use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error in {input:?} at position {position}: {message}")]
    Parse {
        input: String,
        position: usize,
        message: String,
    },
    #[error("{0} is not irreducible over F2")]
    NotIrreducible(String),
    #[error("operation requires a degree-one place, got {0}")]
    UnsupportedPlace(String),
    #[error("zero argument: {0}")]
    ZeroArgument(&'static str),
    #[error("element is not invertible")]
    NotInvertible,
    #[error("quaternions belong to different algebras")]
    AlgebraMismatch,
    #[error("splitting maps are defined only for the algebra [z, 1+z^3)")]
    UnsupportedAlgebra,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("vertices lie in different trees")]
    FieldMismatch,
    #[error("invalid vertex encoding {0:?}")]
    InvalidVertex(String),
    #[error("not a V4-structure: {0}")]
    InvalidStructure(String),
    #[error("invalid quotient map: {0}")]
    InvalidQuotient(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}
