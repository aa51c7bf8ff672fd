use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0}")]
    InvalidArgument(String),

    #[error("logarithm of a non-positive value")]
    NonPositiveLogarithm,

    #[error("{what} would produce {count} items, limit is {limit}")]
    TooLarge {
        what: &'static str,
        count: BigInt,
        limit: u64,
    },

    #[error("all statistical weights vanish: no admissible occupation vector")]
    EmptySupport,

    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("unknown predicate `{name}` at offset {offset}")]
    UnknownPredicate { name: String, offset: usize },

    #[error("predicate `{name}` expects {expected} argument(s), found {found} at offset {offset}")]
    ArityMismatch {
        name: String,
        expected: usize,
        found: usize,
        offset: usize,
    },

    #[error("formula is not closed: free variable(s) {0}")]
    NotClosed(String),

    #[error("formula contains name constant(s); the input language has none")]
    ContainsNames,

    #[error("name a{0} has no assigned element")]
    UnassignedName(usize),

    #[error("variable `{0}` is not bound by the assignment")]
    UnboundVariable(String),

    #[error("expected free variables {expected}, found {found}")]
    FreeVariableMismatch { expected: String, found: String },
}
