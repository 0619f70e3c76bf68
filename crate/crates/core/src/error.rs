use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus {0} is not a prime below 2^16")]
    InvalidModulus(u32),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A caller broke a documented precondition.
    #[error("contract violation: {0}")]
    Contract(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("certificate rejected: {0}")]
    InvalidCertificate(String),

    #[error("duality contradiction: {0}")]
    Contradiction(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
