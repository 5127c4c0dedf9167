use std::io;

use thiserror::Error;

/// Errors raised anywhere in the pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("exponent {alpha} is inconsistent with the model (implies a negative novelty rate)")]
    InconsistentExponent { alpha: f64 },

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("likelihood maximized at the bracket boundary (alpha = {alpha})")]
    BoundaryFit { alpha: f64 },

    #[error("format mismatch: {skipped} of {lines} lines malformed")]
    FormatMismatch { skipped: u64, lines: u64 },

    #[error("time window given but no record carries a timestamp")]
    WindowInapplicable,

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
