use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid coloring: {0}")]
    InvalidColoring(String),

    #[error("parameter mismatch: {0}")]
    ParameterMismatch(String),

    #[error("malformed digit string: {0}")]
    MalformedDigits(String),

    #[error("value lies outside the secret space of {space} values")]
    OutOfRange { space: String },

    #[error("padding violated: triangle position {position} is nonzero beyond declared length {declared}")]
    PaddingViolated { position: usize, declared: usize },

    #[error("invalid scheme parameters: {0}")]
    InvalidParams(String),

    #[error("block {value} is not below the field prime {prime}")]
    BlockOutOfField { value: u64, prime: u64 },

    #[error("digit {digit} at position {position} is not below its radix {radix}")]
    DigitOutOfRadix {
        position: usize,
        digit: u32,
        radix: u32,
    },

    #[error("insufficient shares: need {needed}, got {got}")]
    InsufficientShares { needed: usize, got: usize },

    #[error("duplicate participant index {0}")]
    DuplicateIndex(u32),

    #[error("share metadata mismatch: {0}")]
    MetadataMismatch(String),

    #[error("{0}")]
    Unsupported(String),

    #[error("instance too large for exhaustive mode: {0}")]
    TooLarge(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
