use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("range error: {0}")]
    Range(String),
    #[error("{what} did not converge within {terms} terms")]
    Convergence { what: &'static str, terms: usize },
    #[error("loss of significance in {0}")]
    LossOfSignificance(&'static str),
    #[error("quadrature budget exhausted (best {best:e}, error estimate {err:e})")]
    Accuracy { best: f64, err: f64 },
    #[error("solver: {0}")]
    Solver(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
