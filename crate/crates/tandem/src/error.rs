use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid symbol {ch:?} at position {pos}")]
    InvalidSymbol { ch: char, pos: usize },
    #[error("symbol code {0} has no printable form")]
    UnknownCode(u8),
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("operation (start {start}, len {len}) out of bounds for string of length {subject}")]
    OutOfBounds { start: usize, len: usize, subject: usize },
    #[error("wrong operation kind: expected {0}")]
    WrongKind(&'static str),
    #[error("no square at (start {start}, len {len})")]
    NotASquare { start: usize, len: usize },
    #[error("string is not purely alternating")]
    NotAlternating,
    #[error("alphabet mismatch between source and target")]
    AlphabetMismatch,
    #[error("alphabet size {0} is not supported here")]
    UnsupportedAlphabet(usize),
    #[error("duplicated segment spans {runs} runs, {runs} mod {q} > 1")]
    RunCountViolation { runs: usize, q: usize },
    #[error("invalid run mapping: {0}")]
    InvalidMapping(String),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("master string too short: need {required}, got {actual}")]
    MasterTooShort { required: usize, actual: usize },
    #[error("chunk parse failed at offset {offset}: {reason}")]
    Parse { offset: usize, reason: String },
    #[error("construction failed: {0}")]
    Construction(String),
}

pub type Result<T> = std::result::Result<T, Error>;
