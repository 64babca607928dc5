use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("division by zero in a finite field")]
    DivisionByZero,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("unsupported root system: {0}")]
    UnsupportedType(String),
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),
    #[error("operands belong to different algebras")]
    MixedAlgebras,
    #[error("unsupported operation: {0}")]
    Unsupported(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("matrix is singular")]
    Singular,
    #[error("roots are not pairwise orthogonal")]
    NotOrthogonal,
    #[error("vector is isotropic")]
    Isotropic,
    #[error("out of domain: {0}")]
    Domain(String),
    #[error("field too small: {0}")]
    FieldTooSmall(String),
    #[error("representation format error: {0}")]
    Format(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
