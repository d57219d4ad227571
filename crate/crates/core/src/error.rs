use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid sequence character {ch:?} at position {pos}")]
    InvalidSymbol { ch: char, pos: usize },

    #[error("empty sequence")]
    EmptySequence,

    #[error("lag or frequency {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("frequency {s} is not an exact point for length {len}")]
    NotExactPoint { s: usize, len: usize },

    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("length {0} must be even")]
    OddLength(usize),

    #[error("length {0} must be a multiple of 4")]
    NotMultipleOfFour(usize),

    #[error("length {len} unsupported: {reason}")]
    UnsupportedLength { len: usize, reason: &'static str },

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("cyclotomic order {0} out of supported range")]
    OrderOutOfRange(usize),

    #[error("frequency {t} is incompatible with cyclotomic order {n} at length {len}")]
    IncompatibleOrder { t: usize, n: usize, len: usize },

    #[error("{d} is not a divisor > 1 of {len}")]
    InvalidDivisor { d: usize, len: usize },

    #[error("orbit class must be 1 or 3, got {0}")]
    InvalidOrbitClass(usize),

    #[error("norm {0} of a complement element is not a perfect square")]
    NotASquare(String),

    #[error("{p} and {q} are not coprime")]
    NotCoprime { p: u128, q: u128 },

    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("closed-form residues disagree with the direct test at prime {p} for order {n}")]
    ResidueMismatch { p: u64, n: usize },

    #[error("({a}, {b}) is not an eligible half-point pair for length {len}")]
    Infeasible { len: usize, a: u64, b: u64 },

    #[error("no subsum assignment is achievable for ({a}, {b}) at length {len}")]
    EmptyFeasibleSet { len: usize, a: u64, b: u64 },

    #[error("subsum index {index} out of range ({count} assignments)")]
    SubsumOutOfRange { index: usize, count: usize },

    #[error("checkpoint {path} was written for a different configuration")]
    CheckpointMismatch { path: PathBuf },

    #[error("malformed checkpoint: {0}")]
    BadCheckpoint(String),

    #[error("malformed pair line {line}: {reason}")]
    BadPairLine { line: usize, reason: String },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
