use thiserror::Error;

/// Errors surfaced by tensor ops, model construction and the harness.
#[derive(Debug, Error)]
pub enum Error {
    /// Shapes that cannot be combined by the requested operation.
    #[error("shape mismatch in {op}: lhs {lhs:?} vs rhs {rhs:?}")]
    ShapeMismatch {
        op: &'static str,
        lhs: Vec<usize>,
        rhs: Vec<usize>,
    },

    /// A single-tensor shape/layout violation (bad axis, element-count
    /// mismatch, non-divisible extent, ...).
    #[error("dimension error in {op}: {msg} (shape {shape:?})")]
    Dimension {
        op: &'static str,
        msg: String,
        shape: Vec<usize>,
    },

    /// Bad scalar argument (zero target length, non-scalar loss, ...).
    #[error("invalid argument to {op}: {msg}")]
    InvalidArgument { op: &'static str, msg: String },

    /// Non-finite data rejected by a checked constructor.
    #[error("non-finite value {value} at flat index {index}")]
    NonFinite { index: usize, value: f64 },

    /// Operands built with different scalar precisions.
    #[error("precision mismatch in {op}: {lhs:?} vs {rhs:?}")]
    PrecisionMismatch {
        op: &'static str,
        lhs: crate::tensor::Precision,
        rhs: crate::tensor::Precision,
    },

    /// Configuration that cannot be built or does not match the data.
    #[error("config error: {0}")]
    Config(String),

    /// Missing or duplicate parameter names.
    #[error("parameter error: {0}")]
    Param(String),

    /// Checkpoint / config file format problems.
    #[error("format error in {path}: {msg}")]
    Format { path: String, msg: String },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
