use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("qubit count {0} out of range (supported: 1..=4)")]
    QubitRange(u32),

    #[error("unsupported scale: {0}")]
    UnsupportedScale(String),

    #[error("degenerate game: the tensor has no nonzero Fourier coefficient")]
    DegenerateGame,

    #[error("invalid game: {0}")]
    InvalidGame(String),

    #[error("invalid strategy: {0}")]
    InvalidStrategy(String),

    #[error("matrix has Frobenius norm {0} > 1; rescale before decomposing")]
    RescaleRequired(f64),

    #[error("Hanson-Wright envelope requires a caller-chosen constant")]
    UnspecifiedConstant,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unknown verification suite `{0}`")]
    UnknownSuite(String),

    #[error("unrecognized file format: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
