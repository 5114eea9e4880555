use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Shape or layout mismatch (wrong vector length, scenario mismatch, empty set).
    #[error("structural error: {0}")]
    Structure(String),

    /// A scalar argument outside its admissible range.
    #[error("range error: {0}")]
    Range(String),

    /// Malformed scenario, witness, behavior or strategy text.
    #[error("parse error in `{field}`: {message}")]
    Parse { field: String, message: String },

    /// An enumeration would exceed the configured cap.
    #[error("resource cap exceeded: {needed} items needed, cap is {cap}; {advice}")]
    Resource {
        needed: u128,
        cap: u128,
        advice: String,
    },

    /// A quantum strategy object violates its invariants.
    #[error("invalid strategy: {object}: {message}")]
    Strategy { object: String, message: String },

    /// The quantum value does not exceed the classical bound.
    #[error("no violation: witness value {value} does not exceed bound {bound}")]
    NoViolation { value: f64, bound: f64 },

    /// Witness takes the same value on the quantum point and on white noise.
    #[error("degenerate witness: quantum value equals white-noise value ({0})")]
    DegenerateWitness(f64),

    /// Requested combination is not supported by this implementation.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// Floating-point procedure failed to produce an exact certificate.
    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl Error {
    pub(crate) fn parse(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            field: field.into(),
            message: message.into(),
        }
    }

    pub(crate) fn strategy(object: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Strategy {
            object: object.into(),
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
