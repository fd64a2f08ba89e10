use thiserror::Error;

/// Errors produced by the solvers, detectors and the verification harness.
#[derive(Debug, Error)]
pub enum Error {
    /// An input fell outside its documented domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// The fixed-point solver hit its iteration budget.
    #[error("no convergence after {iterations} iterations (last update {last_update:.3e})")]
    Convergence { iterations: usize, last_update: f64 },

    /// A site set cannot be partitioned into mirror pairs.
    #[error("sites are not symmetric: {0}")]
    Symmetry(String),

    /// The requested procedure is degenerate for these parameters.
    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    /// Bisection found no sign change on the search bracket.
    #[error("objective has no sign change on ({lo}, {hi})")]
    NoSignChange { lo: f64, hi: f64 },

    /// A trajectory exceeded the step cap, which signals a mis-parameterized
    /// run rather than a property of the model.
    #[error("trajectory exceeded the step cap of {cap} steps")]
    IterationCap { cap: u64 },

    /// Parameters outside the supported numeric range.
    #[error("out of supported range: {0}")]
    Range(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
