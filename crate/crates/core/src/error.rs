use thiserror::Error;

/// Errors shared by every numeric and exact operation in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Input violates an operation's mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// Malformed or inconsistent arguments.
    #[error("argument error: {0}")]
    Argument(String),
    /// A reciprocal function was evaluated at one of its poles.
    #[error("pole of {function} at t = {t}")]
    Pole { function: &'static str, t: f64 },
    /// Iterative refinement stopped before reaching the requested accuracy.
    #[error("accuracy error: {message} (best estimate {best}, error estimate {error})")]
    Accuracy {
        message: String,
        best: f64,
        error: f64,
    },
    /// A root finder could not run or did not converge.
    #[error("solver error: {0}")]
    Solver(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn argument(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
