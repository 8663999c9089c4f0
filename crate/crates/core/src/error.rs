use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("bound exceeded: {0}")]
    Bound(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("content collision: {0}")]
    ContentCollision(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("invalid spec: {0}")]
    Spec(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
