use thiserror::Error;

/// Errors raised when an argument falls outside an operation's domain.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{name} must be {expected}, got {value}")]
    Domain {
        name: &'static str,
        expected: &'static str,
        value: f64,
    },

    #[error("{0} requires at least one element")]
    Empty(&'static str),

    #[error("grid times must be positive and strictly increasing")]
    BadGrid,

    #[error("{op} is not supported for {what}")]
    Unsupported { op: &'static str, what: String },

    #[error("unknown theorem id `{0}`")]
    UnknownTheorem(String),

    #[error("unknown {what} `{value}`")]
    UnknownName { what: &'static str, value: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(name: &'static str, expected: &'static str, value: f64) -> Error {
    Error::Domain {
        name,
        expected,
        value,
    }
}

pub(crate) fn check_positive(name: &'static str, value: f64) -> Result<f64> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(domain(name, "positive and finite", value))
    }
}
