use thiserror::Error;

use crate::forms::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown element label `{0}`")]
    UnknownLabel(String),
    #[error(
        "invalid element label `{0}`: labels must be non-empty and avoid whitespace and `<:;=#`"
    )]
    InvalidLabel(String),
    #[error("order relations imply `{0}` < `{0}`")]
    CycleDetected(String),
    #[error("label `{0}` is already used by an element")]
    LabelCollision(String),
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("shape mismatch: expected {expected}, found {found}")]
    ShapeMismatch { expected: usize, found: usize },
    #[error("dimension vector is not admissible: {0}")]
    NotAdmissible(Violation),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("element `{0}` is not maximal")]
    NotMaximal(String),
    #[error("invalid Grassmannian dimensions k = {k}, n = {n}")]
    InvalidDimensions { k: i64, n: i64 },
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("search space of {size} candidates exceeds the budget of {budget}")]
    SearchSpaceTooLarge { size: u128, budget: u128 },
    #[error("enumeration needs {needed} items, above the limit of {limit}")]
    BudgetExceeded { needed: u128, limit: u128 },
    #[error("the variety has no points")]
    EmptyVariety,
    #[error("need at least {needed} distinct primes, got {given}")]
    InsufficientPrimes { needed: usize, given: usize },
    #[error("{0} is not a supported prime (primes up to {max} are accepted)", max = crate::ff::MAX_PRIME)]
    UnsupportedPrime(u64),
    #[error("negative dimension {value} for `{label}`")]
    NegativeDimension { label: String, value: i64 },
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
}
