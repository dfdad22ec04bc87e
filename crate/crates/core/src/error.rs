use thiserror::Error;

/// Errors produced by the `labs` crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("run-length text is empty")]
    EmptyRunLength,
    #[error("invalid run-length character {ch:?} at offset {offset}")]
    InvalidRunLength { ch: char, offset: usize },
    #[error("invalid spin character {ch:?} at offset {offset} (expected '+' or '-')")]
    InvalidSpin { ch: char, offset: usize },
    #[error("merit factor is undefined for a zero-energy sequence")]
    UndefinedMerit,
    #[error("sequence length must be at least 1")]
    EmptySequence,
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("position {pos} is out of range for length {n}")]
    PositionOutOfRange { pos: usize, n: usize },
    #[error("position {0} is already assigned")]
    AlreadyAssigned(usize),
    #[error("position {pos} is not on the assignment frontier (next free positions are {left} and {right})")]
    NotOnFrontier { pos: usize, left: usize, right: usize },
    #[error("position {0} is not the most recent assignment")]
    NotMostRecent(usize),
    #[error("nothing to unassign")]
    NothingAssigned,
    #[error("lag {k} is out of range 1..={max}")]
    LagOutOfRange { k: usize, max: usize },
    #[error("no template source covers length {n} (maximum {max})")]
    TemplateTooLong { n: usize, max: usize },
    #[error("skew-symmetric search requires an odd length, got {0}")]
    SkewNeedsOddLength(usize),
    #[error("oracle refuses length {n}: enumeration budget allows at most {max}")]
    OracleBudget { n: usize, max: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
