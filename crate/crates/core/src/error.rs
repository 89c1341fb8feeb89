use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A root search ran past its iteration cap. This indicates an accuracy
    /// problem in the underlying special-function evaluation.
    #[error("convergence failure: {0}")]
    Convergence(String),

    /// A computation would exceed a configured size limit.
    #[error("resource limit exceeded: {what} needs {requested}, limit is {limit}")]
    Resource {
        what: &'static str,
        requested: f64,
        limit: f64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
