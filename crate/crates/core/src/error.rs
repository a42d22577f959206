use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("arity mismatch: expected {expected}, got {actual}")]
    ArityMismatch { expected: usize, actual: usize },

    #[error("{what} needs arity <= {cap}, got {arity}")]
    CapExceeded {
        what: &'static str,
        arity: usize,
        cap: usize,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parameter overflow: {0}")]
    Overflow(String),

    #[error("certificate collection rejected: {0}")]
    InvalidCertificates(String),

    #[error("outer function has no codeword/data section split")]
    MissingSections,

    #[error("eigensolver did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
