use thiserror::Error;

/// Errors raised by the descent-algebra machinery.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid rank {n} for type {group}: {reason}")]
    InvalidRank {
        group: char,
        n: usize,
        reason: &'static str,
    },
    #[error("invalid generator {0}")]
    InvalidGenerator(String),
    #[error("not a signed permutation: {0}")]
    InvalidPermutation(String),
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("resource bound exceeded: {what} (limit {limit}, requested {requested})")]
    ResourceBound {
        what: &'static str,
        limit: usize,
        requested: usize,
    },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid label {0:?}")]
    InvalidLabel(String),
    #[error("ordering is not a permutation of the generator subset")]
    InvalidOrdering,
    #[error("compositions have unequal totals ({0} vs {1})")]
    UnequalTotals(usize, usize),
    #[error("not in descent-algebra span: coefficient varies on descent class {class}")]
    NotInDescentSpan { class: String },
    #[error("operands belong to different tables or scalar modes")]
    ModeMismatch,
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("{op} is only defined for type {expected}")]
    UnsupportedType { op: &'static str, expected: char },
    #[error("cache: {0}")]
    Cache(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
