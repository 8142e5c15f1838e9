use thiserror::Error;

use crate::dyck::ValidationReport;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid area sequence: {0}")]
    Invalid(ValidationReport),

    #[error("malformed step word: prefix of length {prefix} {fault}")]
    MalformedSteps { prefix: usize, fault: StepFault },

    #[error("catalan({0}) does not fit in 64 bits")]
    CatalanOverflow(usize),

    #[error("insertion position {position} out of range 0..={len}")]
    PositionOutOfRange { position: usize, len: usize },

    #[error("letter {letter} not insertable here: only {available} admissible positions")]
    NotInsertable { letter: usize, available: usize },

    #[error("operation requires a nonempty word")]
    EmptyWord,

    #[error("prefix of length {prefix} is longer than the requested size {n}")]
    PrefixTooLong { prefix: usize, n: usize },

    #[error("size {n} exceeds the exhaustive limit {limit}")]
    OverLimit { n: usize, limit: usize },

    #[error("size {n} exceeds the rendering limit {max}")]
    TooLargeToRender { n: usize, max: usize },

    #[error("unknown statistic {0:?} (expected area, dinv or bounce)")]
    UnknownStatistic(String),

    #[error("unknown check {0:?}")]
    UnknownCheck(String),
}

/// Why a step word is not a Dyck path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepFault {
    /// More east steps than north steps.
    BelowDiagonal,
    /// The whole word does not end on the diagonal.
    Unbalanced,
    /// A character other than `N` or `E`.
    UnknownSymbol(char),
}

impl std::fmt::Display for StepFault {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            StepFault::BelowDiagonal => f.write_str("goes below the diagonal"),
            StepFault::Unbalanced => f.write_str("has unequal north and east counts"),
            StepFault::UnknownSymbol(c) => write!(f, "ends with unknown symbol {c:?}"),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
