use crate::arith::Int;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid interval [{lo}, {hi}): need 0 <= lo < hi")]
    InvalidInterval { lo: Int, hi: Int },

    #[error("boundaries must be nonnegative and strictly increasing (index {index})")]
    NotIncreasing { index: usize },

    #[error("invalid tail rule: {0}")]
    InvalidTail(String),

    #[error("set has no tail rule")]
    NoTail,

    #[error("boundary index {0} is outside the stored boundaries of a finite set")]
    IndexOutOfRange(i64),

    #[error("the tail rule must start at index 0 (found i0 = {0}); truncate the set first")]
    TailNotAnchored(usize),

    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),

    #[error("insufficient data to detect a tail rule")]
    InsufficientData,

    #[error("invalid seed: {0}")]
    InvalidSeed(String),

    #[error("invalid weights ({k1}, {k2}): both must be positive")]
    InvalidWeights { k1: Int, k2: Int },

    #[error("ratio must be at least 2 (got {0})")]
    InvalidRatio(Int),

    #[error("n = {n} is below the supported range: m = {m} < t0 = {t0}")]
    BelowRange { n: Int, m: Int, t0: Int },

    #[error("exponent g must be an odd positive integer (got {0})")]
    InvalidExponent(u32),

    #[error("view horizon {horizon} does not cover {needed}")]
    HorizonTooSmall { horizon: Int, needed: Int },

    #[error("invalid range [{lo}, {hi}]")]
    InvalidRange { lo: Int, hi: Int },

    #[error("witness pair ({a1}, {a2}) for q = {q} failed validation")]
    WitnessFailed { q: Int, a1: Int, a2: Int },
}
