use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is not symmetric (max asymmetry {0:e})")]
    NotSymmetric(f64),

    #[error("cholesky failed at pivot {pivot} after jitter escalation to {jitter:e}; input is not positive semidefinite")]
    NotPositiveDefinite { pivot: usize, jitter: f64 },

    #[error("design matrix is rank deficient at column {column}")]
    RankDeficient { column: usize },

    #[error("degenerate residuals: {0}")]
    Degenerate(String),

    #[error("non-finite value encountered: {0}")]
    NonFinite(String),

    #[error("simulation diverged at step {step} (|x| = {value:e})")]
    Diverged { step: usize, value: f64 },

    #[error("lasso did not converge after {sweeps} sweeps (last max change {max_change:e})")]
    NoConvergence { sweeps: usize, max_change: f64 },

    #[error("undefined metric: {0}")]
    UndefinedMetric(String),

    #[error("invalid config: {0}")]
    Config(String),

    #[error("missing coverage: {0}")]
    Coverage(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
