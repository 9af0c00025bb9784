use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("range error: {0}")]
    Range(String),
    #[error("divergent series: {0}")]
    Divergence(String),
    #[error("usage error: {0}")]
    Usage(String),
    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),
    #[error("symmetry violation: imaginary part {imag:e} exceeds error estimate {err:e}")]
    SymmetryViolation { imag: f64, err: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
