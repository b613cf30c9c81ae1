use thiserror::Error;

/// Errors raised by generators, estimators and samplers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("substitution does not grow: fixed point has length {reached}, {target} requested")]
    NonGrowing { reached: usize, target: usize },

    #[error("seed word {0:?} is not a prefix of any of its first images")]
    SeedNotPrefix(String),

    #[error("block {block:?} has no image under the block map")]
    UnmappedBlock { block: String },

    #[error("window over alphabet {0:?} has no spin map")]
    NotNumeric(Vec<String>),

    #[error("window length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("factor length {n} exceeds N/4 = {limit} for a window of length {len}")]
    Undersampled { n: usize, limit: usize, len: usize },

    #[error("{states} configurations are too many to enumerate (limit {limit}); use the Monte Carlo sampler")]
    TooLargeForEnumeration { states: u128, limit: u128 },

    #[error("boundary frame of thickness {have} cannot cover interaction range {need}")]
    FrameTooThin { have: usize, need: usize },

    #[error("interaction: {0}")]
    Interaction(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
