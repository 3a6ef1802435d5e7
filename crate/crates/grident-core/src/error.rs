//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("group order must be at least 1")]
    EmptyGroup,
    #[error("group order {order} exceeds the limit {limit}")]
    OrderLimit { order: usize, limit: usize },
    #[error("invalid Cayley table: {0}")]
    InvalidGroup(String),
    #[error("elements belong to different groups")]
    GroupMismatch,
    #[error("no element named `{0}` in this group")]
    UnknownElement(String),
    #[error("element index {index} out of range 1..={order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("repeated variable index {0} violates strong multilinearity")]
    RepeatedVariable(u32),
    #[error("length {got} does not match expected length {want}")]
    LengthMismatch { got: usize, want: usize },
    #[error("sequence {0:?} is not a permutation of 1..={1}")]
    NotAPermutation(Vec<usize>, usize),
    #[error("degree {degree} exceeds the path-enumeration cap {cap}")]
    DegreeCap { degree: usize, cap: usize },
    #[error("evaluation needs {needed} symbolic variables, over the oracle cap {cap}")]
    OracleCap { needed: usize, cap: usize },
    #[error("enumeration needs {needed} assignments, over the budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("invalid split ({k1},{k2}) of k={k}")]
    InvalidSplit { k1: usize, k2: usize, k: usize },
    #[error("{quantity}({k},{n}) is not divisible by {divisor}; counting bug")]
    Divisibility {
        quantity: &'static str,
        k: usize,
        n: usize,
        divisor: usize,
    },
    #[error("conflicting values recorded for {0}")]
    TableConflict(String),
    #[error("invalid basic swap: {0}")]
    InvalidSwap(String),
    #[error("permutation is not initial-product-preserving for this monomial")]
    NotIpp,
    #[error("elementary grading tuple entries must be distinct and nonempty")]
    InvalidGradingTuple,
    #[error("unknown group spec `{0}` (expected C<k>, D<m>, S<m>, products like C2xC2, or table:<path>)")]
    UnknownGroupSpec(String),
    #[error("asymptotic formulas require n >= 1")]
    AsymptoticAtZero,
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
