use thiserror::Error;

use crate::lengths::SubsetMask;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("malformed number {0:?}")]
    MalformedNumber(String),
    #[error("entry {index} is not positive: {value}")]
    EntryNotPositive { index: usize, value: String },
    #[error("a length vector needs at least 3 entries, got {0}")]
    TooFewEntries(usize),
    #[error("{n} entries exceeds the limit of {max}")]
    TooManyEntries { n: usize, max: usize },
    #[error("length vector is not ordered (l1 <= ... <= ln)")]
    NotOrdered,
    #[error("length vector is not generic: {witness} is median")]
    NotGeneric { witness: SubsetMask },
    #[error("dimension mismatch: {left} vs {right} entries")]
    DimensionMismatch { left: usize, right: usize },
    #[error("ambient dimension d = {0} is not supported (need d >= 3)")]
    UnsupportedDimension(u32),
    #[error("subset {mask} is out of range for n = {n}")]
    SubsetOutOfRange { mask: SubsetMask, n: usize },
    #[error("malformed chamber candidate: {0}")]
    MalformedCandidate(String),
    #[error("{what} = {value} is outside {min}..={max}")]
    OutOfRange {
        what: &'static str,
        value: usize,
        min: usize,
        max: usize,
    },
    #[error("bijection search over {vars} variables exceeds the limit of {max}")]
    SearchTooLarge { vars: usize, max: usize },
    #[error("subset {0} is not long")]
    SubsetNotLong(SubsetMask),
    #[error("vector u{index} has norm {norm}, expected 1")]
    NonUnitInput { index: usize, norm: f64 },
    #[error("polygon solver did not converge (best residual {best_residual:e})")]
    ConvergenceFailure { best_residual: f64 },
    #[error("degenerate configuration: {0}")]
    DegenerateConfiguration(String),
}
