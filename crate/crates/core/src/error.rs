use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An input lies outside the domain of the function (e.g. a negative
    /// integration limit or a non-positive temperature).
    #[error("domain error: {0}")]
    Domain(String),
    /// An argument is malformed or inconsistent with the others.
    #[error("invalid argument: {0}")]
    Argument(String),
    /// The truncated Hilbert space is larger than the configured cap.
    #[error("basis dimension {dim} exceeds the cap of {cap} states")]
    DimensionCap { dim: u128, cap: usize },
    #[error("unknown material `{0}`")]
    UnknownMaterial(String),
    #[error("material table: {0}")]
    MaterialTable(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn argument(msg: impl Into<String>) -> Error {
    Error::Argument(msg.into())
}
