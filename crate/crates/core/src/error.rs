use thiserror::Error;

/// Errors raised by the exfam library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ground set of size {0} exceeds the 64-element limit")]
    GroundTooLarge(usize),
    #[error("element {element} out of range 1..={n}")]
    ElementOutOfRange { element: u64, n: usize },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("unequal parts")]
    UnequalParts,
    #[error("empty family")]
    EmptyFamily,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("search scale exceeded: {0}")]
    ScaleExceeded(String),
    #[error("node budget of {budget} exhausted after {explored} nodes (best lower bound so far: {lower_bound})")]
    BudgetExhausted {
        budget: u64,
        explored: u64,
        lower_bound: usize,
    },
    #[error("family is not atomic")]
    NotAtomic,
    #[error("line {line}: {kind}")]
    Parse { line: usize, kind: ParseErrorKind },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("missing header")]
    MissingHeader,
    #[error("malformed header")]
    MalformedHeader,
    #[error("malformed line")]
    MalformedLine,
    #[error("element out of range")]
    ElementOutOfRange,
    #[error("non-increasing line")]
    NonIncreasingLine,
    #[error("duplicate set")]
    DuplicateSet,
}

pub type Result<T> = std::result::Result<T, Error>;
