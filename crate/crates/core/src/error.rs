use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An input lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("division by zero")]
    DivisionByZero,

    /// The input is valid but exceeds a configured desk-scale bound.
    #[error("capacity exceeded: {what} = {value} (limit {limit})")]
    Capacity { what: &'static str, value: f64, limit: f64 },

    /// A numerical procedure did not reach the requested accuracy.
    #[error("no convergence: {0}")]
    Convergence(String),
}

impl Error {
    pub(crate) fn capacity(what: &'static str, value: impl Into<f64>, limit: impl Into<f64>) -> Self {
        Error::Capacity { what, value: value.into(), limit: limit.into() }
    }
}
