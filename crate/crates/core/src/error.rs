use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("series has zero constant term and cannot be inverted")]
    ZeroConstantTerm,
    #[error("logarithm needs a series with constant term 1, found {0}")]
    NotUnitOne(String),
    #[error("series must have zero constant term, found {0}")]
    NonzeroConstant(String),
    #[error("series is not reversible: it needs zero constant term and nonzero linear term")]
    NotReversible,
    #[error("ring dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("grade shift mismatch: {0} vs {1} (mod {2})")]
    GradeMismatch(i64, i64, usize),
    #[error("w-window exhausted: no headroom above w^0 (wmax = {0})")]
    WindowExhausted(i64),
    #[error("slot (H^{k}, w^{j}) lies outside the stored window")]
    OutOfWindow { k: usize, j: i64 },
    #[error("invalid geometry: {0}")]
    InvalidSpec(String),
}
