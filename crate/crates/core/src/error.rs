use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("element {index} is out of range for a group of order {order}")]
    InvalidElement { index: usize, order: usize },

    #[error("invalid group descriptor `{0}` (expected `xor:N` or `cyclic:n`)")]
    InvalidGroup(String),

    #[error("group of order {order} is too large to materialize a twist table (limit {limit})")]
    GroupTooLarge { order: usize, limit: usize },

    #[error("twist entry ({p}, {q}) is {value}, expected -1 or +1")]
    InvalidSign { p: usize, q: usize, value: i64 },

    #[error("twist is not unital: entry ({p}, {q}) must be +1")]
    NotUnital { p: usize, q: usize },

    #[error("sign table has {actual} entries, expected {expected}")]
    TableSize { expected: usize, actual: usize },

    #[error("operands belong to different groups ({left} vs {right})")]
    GroupMismatch { left: String, right: String },

    #[error("operands belong to different algebra contexts")]
    ContextMismatch,

    #[error("coefficient vector has length {actual}, expected {expected}")]
    Dimension { expected: usize, actual: usize },

    #[error("{operation} requires {requirement}")]
    Unsupported {
        operation: &'static str,
        requirement: &'static str,
    },

    #[error("malformed blade `{0}`")]
    MalformedBlade(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("enumeration is incomplete (node budget exhausted)")]
    IncompleteEnumeration,
}

pub type Result<T> = std::result::Result<T, Error>;
