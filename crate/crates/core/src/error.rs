use thiserror::Error;

/// Errors raised by library operations.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("degenerate pencil parameter")]
    DegeneratePencil,
    #[error("signature requires a real form")]
    NonRealForm,
    #[error("signature requires exact scalars")]
    InexactForm,
    #[error("points coincide: {0}")]
    Coincident(String),
    #[error("pencil anchor must be regular")]
    SingularAnchor,
    #[error("identical quadrics")]
    IdenticalQuadrics,
    #[error("root isolation failed: {0}")]
    RootIsolation(String),
    #[error("fiber projectivity undefined on the exceptional generator")]
    FiberUndefined,
    #[error("projection not well defined")]
    ProjectionUndefined,
    #[error("factor not in SE(3) cover: {0}")]
    NotStudy(String),
    #[error("not a positive scalar-orthogonal matrix")]
    NotScalarOrthogonal,
    #[error("orientation-reversing, not in the group")]
    OrientationReversing,
    #[error("singular matrix")]
    Singular,
    #[error("not an admissible transformation: {0}")]
    NotAdmissible(String),
    #[error("invalid dyad: {0}")]
    InvalidDyad(String),
    #[error("classifier input must be a real projective three-space: {0}")]
    InvalidSpace(String),
    #[error("base point: {0}")]
    InvalidBase(String),
    #[error("exceptional generator has no displacement")]
    ExceptionalGenerator,
    #[error("trajectory degree requires exact scalars")]
    InexactTrajectory,
    #[error("line inside null cone")]
    LineInNullCone,
    #[error("line inside translation 4-space")]
    LineInTranslationSpace,
    #[error("line inside exceptional generator")]
    LineInExceptionalGenerator,
    #[error("quadric not in admissible position")]
    NotAdmissiblePosition,
    #[error("configuration violates hypothesis: {0}")]
    Configuration(String),
    #[error("exact arithmetic required: {0}")]
    ExactRequired(String),
}

pub type Result<T> = std::result::Result<T, Error>;
