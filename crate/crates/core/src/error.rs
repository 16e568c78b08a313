use thiserror::Error;

/// Crate-wide error type. Variants map onto the CLI exit codes
/// (usage 2, resource 3, cache integrity 4).
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("cache integrity: {0}")]
    CacheIntegrity(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }

    pub fn cache(msg: impl Into<String>) -> Self {
        Error::CacheIntegrity(msg.into())
    }
}
