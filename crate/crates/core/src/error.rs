use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid alphabet parameters: {0}")]
    InvalidParams(String),

    #[error("symbol {symbol} is outside the alphabet of size {q}")]
    InvalidSymbol { symbol: u32, q: u32 },

    #[error("sequence has length {found}, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("dimension mismatch: (q={left_q}, L={left_len}) vs (q={right_q}, L={right_len})")]
    DimensionMismatch {
        left_q: u32,
        left_len: usize,
        right_q: u32,
        right_len: usize,
    },

    #[error("cannot mix set-mode and multiset-mode pools")]
    ModeMismatch,

    #[error("operation not supported for {0}")]
    UnsupportedMode(&'static str),

    #[error("duplicate sequence in a set-mode pool")]
    DuplicateMember,

    #[error("invalid injection: {0}")]
    InvalidInjection(String),

    #[error("instance too large: {what} exceeds the limit of {limit}")]
    InstanceTooLarge { what: String, limit: u64 },

    #[error("infeasible error pattern: {0}")]
    Infeasible(String),

    #[error("minimum distance is undefined for a code with fewer than two codewords")]
    UndefinedMinimum,

    #[error("code has no codewords")]
    EmptyCode,

    #[error("duplicate codeword in a code")]
    DuplicateCodeword,

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("bound not applicable: {0}")]
    NotApplicable(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("contradiction: {0}")]
    Contradiction(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn too_large(what: impl Into<String>, limit: u64) -> Self {
        Error::InstanceTooLarge {
            what: what.into(),
            limit,
        }
    }
}
