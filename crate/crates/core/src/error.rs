//! Error type shared across the toolkit, with stable exit-code classes.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input: out-of-range vertices, invalid parameters, bad files.
    #[error("input error: {0}")]
    Input(String),

    /// Parse failure in a text input, with a 1-based line number.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A configured budget or size limit was exceeded.
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    /// A structural validation check failed.
    #[error("validation failed [{check}]: {detail}")]
    Validation { check: String, detail: String },

    /// An internal invariant was violated; indicates an engine bug.
    #[error("property violation: {0}")]
    PropertyViolation(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code for this error class: 2 input, 3 resource,
    /// 4 validation, 5 property violation.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Input(_) | Error::Parse { .. } | Error::Io(_) => 2,
            Error::Resource(_) => 3,
            Error::Validation { .. } => 4,
            Error::PropertyViolation(_) => 5,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_are_stable() {
        assert_eq!(Error::Input("x".into()).exit_code(), 2);
        assert_eq!(
            Error::Parse {
                line: 3,
                message: "x".into()
            }
            .exit_code(),
            2
        );
        assert_eq!(Error::Resource("x".into()).exit_code(), 3);
        assert_eq!(
            Error::Validation {
                check: "regular".into(),
                detail: "x".into()
            }
            .exit_code(),
            4
        );
        assert_eq!(Error::PropertyViolation("x".into()).exit_code(), 5);
    }
}
