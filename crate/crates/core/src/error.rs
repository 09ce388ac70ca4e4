use thiserror::Error;

/// Errors raised by word, continued-fraction and audit operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("empty word")]
    EmptyWord,
    #[error("exponent must be positive, got {0}")]
    InvalidExponent(String),
    #[error("continued fraction has zero denominator")]
    ZeroDenominator,
    #[error("continued fraction value is undefined")]
    Undefined,
    #[error("word {0} is not in N* (all terms must be >= 1)")]
    NonStandardWord(String),
    #[error("m must be a positive integer")]
    InvalidM,
    #[error("lemma hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("word {word} is not {m}-palindromic")]
    NotMPalindrome { word: String, m: u64 },
    #[error("extended continued fraction value undefined or non-positive: {0}")]
    UndefinedExtendedValue(String),
    #[error("insufficient data: need {needed} ratios, have {have}")]
    InsufficientData { needed: usize, have: usize },
    #[error("schedule is not strictly increasing")]
    ScheduleNotIncreasing,
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("period value is rational")]
    DegeneratePeriod,
    #[error("exponent w must lie strictly between 3/2 and 2, got {0}")]
    InvalidW(String),
    #[error("partial quotient overflow")]
    Overflow,
}

pub type Result<T> = std::result::Result<T, Error>;
