use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("degree {degree} lies outside the window [{lo}, {hi}]")]
    WindowViolation { degree: i64, lo: i64, hi: i64 },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("idempotent label error: {0}")]
    Label(String),

    #[error("n = {n} exceeds the enumeration cap {cap}")]
    Capacity { n: i64, cap: i64 },

    #[error("unsupported form: {0}")]
    UnsupportedForm(String),

    #[error("grading violation at ({sigma}, {tau}): {detail}")]
    GradingViolation { sigma: i64, tau: i64, detail: String },

    #[error("internal consistency check failed: {0}")]
    InternalConsistency(String),

    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn precondition<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Precondition(msg.into()))
}
