use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Invalid input: out-of-range genus, mismatched dimensions, degenerate vectors.
    #[error("parameter error: {0}")]
    Parameter(String),

    /// Exact integer arithmetic left the representable range.
    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("i/o error at {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("certificate schema error: {0}")]
    Schema(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn param<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parameter(msg.into()))
}
