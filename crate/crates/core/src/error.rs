use thiserror::Error;

/// Errors raised by the evaluation pipelines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("pole at {0}")]
    Pole(f64),
    #[error("not converged: estimate {estimate:e}, error bound {error:e}")]
    NotConverged { estimate: f64, error: f64 },
    #[error("non-finite result")]
    NonFinite,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("not in the Euler-sum catalog: {0}")]
    CatalogMiss(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
