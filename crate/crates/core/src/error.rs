use thiserror::Error;

/// Errors produced by the numerical pipeline.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("argument {x} outside the supported domain {domain}")]
    Domain { x: f64, domain: &'static str },

    #[error("degenerate conditioning at p = {p}: K(p,p) = {diag:e}")]
    DegenerateConditioning { p: f64, diag: f64 },

    #[error("operator is not contractive: eigenvalue excursion {excursion:e} outside [0,1]")]
    NonContractive { excursion: f64 },

    #[error("degenerate distribution: variance is zero")]
    DegenerateDistribution,

    #[error("truncation error: {0}")]
    Truncation(String),

    #[error("recursion convention error: {0}")]
    Convention(String),

    #[error("unknown {kind} identifier `{id}`")]
    UnknownId { kind: &'static str, id: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for failures caused by malformed input rather than by numerical validation.
    pub fn is_usage(&self) -> bool {
        matches!(self, Error::InvalidArgument(_) | Error::UnknownId { .. })
    }
}
