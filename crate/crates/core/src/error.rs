use crate::ops::Operation;
use crate::rational::Rational;

/// Crate-wide error type.
///
/// The variants map onto the CLI exit-code contract: `Input` is a malformed
/// or inconsistent argument, `Resource` is an exceeded enumeration or
/// brute-force cap, `TheoremContradiction` signals that a step whose success
/// is mathematically guaranteed failed (an implementation or input bug, never
/// an expected outcome), and the remaining variants are failed checks.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),

    #[error("resource cap exceeded: {what} needs {required} but the cap is {cap}")]
    Resource {
        what: String,
        required: u128,
        cap: u128,
    },

    #[error("improper superposition: weight {weight} on non-projection {op:?}")]
    Improper { op: Operation, weight: Rational },

    #[error("invalid weighting: {0}")]
    Validity(String),

    #[error("certificate error: {0}")]
    Certificate(String),

    #[error("structural error: {0}")]
    Structural(String),

    #[error("theorem contradiction: {0}")]
    TheoremContradiction(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn resource(what: impl Into<String>, required: u128, cap: u128) -> Self {
        Error::Resource {
            what: what.into(),
            required,
            cap,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
