use thiserror::Error;

pub type Result<T, E = ConicError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum ConicError {
    /// Malformed or dimensionally inconsistent caller input.
    #[error("input error: {0}")]
    Input(String),

    /// Arguments outside the domain of an operation (index out of range,
    /// a cone that is not a face of the given parent, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Too many Monte Carlo samples landed within tolerance of a face boundary.
    #[error("ambiguous face identification: {ambiguous} of {requested} samples (smallest margin {min_margin:e})")]
    Ambiguous {
        ambiguous: u64,
        requested: u64,
        min_margin: f64,
    },

    /// Two independent evaluations of the same quantity disagreed. Always a bug.
    #[error("invariant violation: {0}")]
    Invariant(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl ConicError {
    pub fn input(msg: impl Into<String>) -> Self {
        ConicError::Input(msg.into())
    }

    pub fn domain(msg: impl Into<String>) -> Self {
        ConicError::Domain(msg.into())
    }
}
