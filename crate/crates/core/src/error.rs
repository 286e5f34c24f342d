use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// Invalid grid, step size or study parameters.
    #[error("configuration error: {0}")]
    Config(String),
    /// The caller broke a documented precondition (e.g. wrong parity).
    #[error("contract violation: {0}")]
    Contract(String),
    /// The evolved field became non-finite or exceeded the hard stop.
    #[error("blow-up at t = {t}: {reason}")]
    BlowUp { t: f64, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn config(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}
