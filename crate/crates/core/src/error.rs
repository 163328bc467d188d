use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ambient mismatch: {left} variables vs {right}")]
    AmbientMismatch { left: usize, right: usize },

    #[error("exponent overflow")]
    ExponentOverflow,

    #[error("variable x{index} out of range for a ring with {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parameters out of range: {0}")]
    OutOfRange(String),

    #[error("graph error: {0}")]
    Graph(String),

    #[error("neighborhood is not bipartite; odd cycle {cycle:?}")]
    NotBipartite { cycle: Vec<usize> },

    #[error("resource limit: {what} exceeds cap {cap}")]
    ResourceLimit { what: &'static str, cap: usize },

    #[error("time budget of {budget_ms} ms exhausted")]
    TimeBudget { budget_ms: u128 },
}

impl Error {
    /// Resource failures are reported as skips by the sweep harness.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::ResourceLimit { .. } | Error::TimeBudget { .. })
    }
}
