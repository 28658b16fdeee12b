use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("size {got} exceeds the configured bound {bound} for {what}")]
    BoundExceeded { what: &'static str, got: usize, bound: usize },

    #[error("subset {0:?} has odd cardinality")]
    OddSubset(Vec<usize>),

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("partition ({0:?}, {1:?}) is not standard")]
    NotStandard(Vec<usize>, Vec<usize>),

    #[error("diagram {0} is odd")]
    OddDiagram(String),

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("invalid network: {0}")]
    InvalidNetwork(String),

    #[error("invalid shape: {0}")]
    InvalidShape(String),

    #[error("{k} variables cannot separate Q-functions of degree {degree}")]
    InsufficientVariables { k: usize, degree: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("identity failed: {0}")]
    IdentityFailure(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
