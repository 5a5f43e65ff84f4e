use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid gate: {0}")]
    InvalidGate(String),

    #[error("corrupted state: squared norm {norm_sqr} deviates from 1")]
    CorruptedState { norm_sqr: f64 },

    #[error("unmappable character {ch:?} at position {position}")]
    UnmappableCharacter { ch: char, position: usize },

    #[error("invalid block index {index}: only {available} previous blocks known")]
    InvalidIndex { index: usize, available: usize },

    #[error("transmission failed at block {block} after {retransmissions} retransmissions")]
    TransmissionFailed { block: usize, retransmissions: usize },

    #[error("unknown strategy {0:?}")]
    UnknownStrategy(String),

    #[error("invalid key file: {0}")]
    InvalidKey(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
