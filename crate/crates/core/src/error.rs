use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("element {value} is not in a field of order {order}")]
    InvalidElement { value: u32, order: u32 },

    #[error("inversion of zero")]
    ZeroInverse,

    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: String, right: String },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("instance too large: {0}")]
    TooLarge(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("decode failure: {0}")]
    Decode(String),

    #[error("attack failed at stage {stage}: {msg}")]
    Attack { stage: &'static str, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn attack(stage: &'static str, msg: impl Into<String>) -> Self {
        Error::Attack { stage, msg: msg.into() }
    }
}
