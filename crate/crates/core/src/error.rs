use std::io;

/// Library error type.
///
/// `Config` and `Parse` describe rejected inputs; `Numerical` reports a
/// quadrature that could not reach the requested tolerance. Internal
/// consistency violations (sign constraints on derived coefficients) are
/// asserted instead, since they can only arise from implementation bugs.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("numerical error in {context}: achieved absolute error {achieved:.3e} exceeds requested {requested:.3e}")]
    Numerical {
        context: String,
        achieved: f64,
        requested: f64,
    },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
}

impl Error {
    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    /// Process exit code the CLI maps this error to.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::Parse { .. } | Error::Io { .. } => 1,
            Error::Numerical { .. } => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
