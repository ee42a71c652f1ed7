use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid state label: {0}")]
    InvalidState(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("index {index} outside supported range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("eigenvalue not bracketed: {0}")]
    NotBracketed(String),

    #[error("no convergence after {iterations} iterations (last change {last_change:.3e}): {context}")]
    NotConverged { iterations: usize, last_change: f64, context: String },

    #[error("missing P-value for exponent q = {0}")]
    MissingPValue(f64),

    #[error("sampled function does not cover r = {r} (range {lo}..{hi})")]
    OutOfSampledRange { r: f64, lo: f64, hi: f64 },
}
