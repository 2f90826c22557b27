use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by the model, the objective layer and the optimisers.
#[derive(Debug, Error)]
pub enum WecError {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The buoy or tether geometry is not physically admissible.
    #[error("geometry error: {0}")]
    Geometry(String),

    /// A data file could not be parsed. `line` is 1-based.
    #[error("parse error in {path} at line {line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },

    /// The frequency response matrix could not be inverted.
    #[error("singular frequency response at omega = {omega} rad/s")]
    Singular { omega: f64 },

    /// An optimiser or campaign configuration is invalid.
    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl WecError {
    pub(crate) fn parse(path: impl Into<String>, line: usize, message: impl Into<String>) -> Self {
        WecError::Parse {
            path: path.into(),
            line,
            message: message.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        WecError::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T, E = WecError> = std::result::Result<T, E>;
