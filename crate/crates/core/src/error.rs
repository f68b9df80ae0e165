use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("ring mismatch between operands")]
    RingMismatch,
    #[error("operation requires a modular ring")]
    NotModular,
    #[error("empty sequence")]
    EmptySequence,
    #[error("sequence of length {len} is shorter than {weights} weights")]
    TooShort { len: usize, weights: usize },
    #[error("expected odd sequence length, got {0}")]
    EvenLength(usize),
    #[error("height {h} out of range 1..={max}")]
    HeightOutOfRange { h: usize, max: usize },
    #[error("invalid window [{0}, {1}]")]
    InvalidWindow(i64, i64),
    #[error("interlacing width mismatch: {firsts} first terms, {diffs} differences")]
    IapShape { firsts: usize, diffs: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
