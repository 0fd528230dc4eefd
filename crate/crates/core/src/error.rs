use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("index {index} out of range for degree {degree}")]
    IndexOutOfRange { index: usize, degree: usize },

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("apex `{0}` collides with an existing vertex")]
    ApexCollision(String),

    #[error("incompatible vertex orders: {0}")]
    IncompatibleOrders(String),

    #[error("empty intersection")]
    EmptyIntersection,

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("composition undefined for `{g}` ∘ `{f}`")]
    MissingComposite { g: String, f: String },

    #[error("map at vertex `{0}` is not invertible")]
    Singular(String),

    #[error("twist maps of `{0}` and `{1}` do not commute")]
    NotCommuting(String, String),

    #[error("group mismatch: {0}")]
    GroupMismatch(String),

    #[error("degree {degree} outside the supported range (cap {cap})")]
    DegreeOutOfRange { degree: usize, cap: usize },

    #[error("structure does not preserve the basepoint at vertex `{0}`")]
    NotBasepointPreserving(String),
}

pub type Result<T> = std::result::Result<T, Error>;
