use thiserror::Error;

/// Errors raised by the laboratory. Variants map onto the CLI exit codes.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// Malformed input: wrong dimensions, non-orthonormal basis, bad weights.
    #[error("structural error: {0}")]
    Structural(String),
    /// Argument outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// Parameter outside the range a sampler supports.
    #[error("parameter out of supported range: {0}")]
    OutOfRange(String),
    /// Euler–Maruyama iterate left the ball of radius 1e12.
    #[error("numerical divergence at step {step}: |x| = {norm:e}")]
    Divergence { step: usize, norm: f64 },
    /// Invalid experiment configuration.
    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn structural(msg: impl Into<String>) -> Error {
    Error::Structural(msg.into())
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
