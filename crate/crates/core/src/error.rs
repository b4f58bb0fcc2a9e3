use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid modulus {0}: expected 0 (exact) or 2 <= m < 2^31")]
    InvalidModulus(u64),

    #[error("coefficient rings differ (modulus {left} vs {right})")]
    RingMismatch { left: u32, right: u32 },

    #[error("constant term {constant} is not a unit (modulus {modulus})")]
    NotInvertible { constant: String, modulus: u32 },

    #[error("cannot reduce coefficients mod {to}: series is over Z/{from}")]
    IncompatibleModulus { from: u32, to: u32 },

    #[error("insufficient order: need coefficients up to q^{needed}, only valid up to q^{available}")]
    InsufficientOrder { needed: usize, available: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid character table: {0}")]
    InvalidCharacter(String),

    #[error("series vanishes identically up to the requested order")]
    ZeroSeries,

    #[error("{0}")]
    RequiresExactMode(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
