use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("scalars from different fields")]
    FieldMismatch,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("malformed quiver: {0}")]
    MalformedQuiver(String),
    #[error("malformed relation: {0}")]
    MalformedRelation(String),
    #[error("irreducible paths survive at length cap {0}; the ideal is not admissible or the cap is too small")]
    NotAdmissible(usize),
    #[error("path does not belong to this quiver: {0}")]
    ForeignPath(String),
    #[error("modules or morphisms live over different algebras")]
    AlgebraMismatch,
    #[error("invalid representation: {0}")]
    InvalidModule(String),
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("an endomorphism has a characteristic polynomial that does not split over the ground field")]
    NonSplitEndomorphism,
    #[error("projective resolution still nonzero at cap {0}")]
    ExceedsCap(usize),
    #[error("vertex {0} is not a sink")]
    NotASink(String),
    #[error("mutation rejected: {0}")]
    MutationRejected(String),
    #[error("more than {0} vertices in the tilting diagram")]
    VertexCapExceeded(usize),
    #[error("vertex not found in diagram")]
    VertexNotFound,
    #[error("grading is not homogeneous: {0}")]
    HeterogeneousGrading(String),
    #[error("covering validation failed: {0}")]
    ValidationFailed(String),
    #[error("assertion failed: {0}")]
    AssertionFailed(String),
}
