use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime in the supported range 2..=97")]
    NotPrime(u32),

    #[error("multiplication is not associative on basis triple ({i}, {j}, {k}): ({i}{j}){k} != {i}({j}{k})", i = .labels.0, j = .labels.1, k = .labels.2)]
    NonAssociative {
        indices: (usize, usize, usize),
        labels: (String, String, String),
    },

    #[error("unit law fails on basis element {label}")]
    BadUnit { label: String },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("quotient is not finite-dimensional within nilpotency cap {cap}: path {path} survives")]
    NotFiniteDimensional { cap: usize, path: String },

    #[error("radical by trace form needs p > dim (p = {p}, dim = {dim}) and the brute tier is over budget; supply a quiver presentation")]
    CharacteristicTooSmall { p: u32, dim: usize },

    #[error("budget exceeded in {what}: needs {needed}, budget {budget}")]
    BudgetExceeded {
        what: String,
        needed: u128,
        budget: u128,
    },

    #[error("element is not idempotent")]
    NotIdempotent,

    #[error("subspace is not a two-sided ideal")]
    NotAnIdeal,

    #[error("objects live over different algebras")]
    AlgebraMismatch,

    #[error("ideal is not idempotent: dim I/I^2 = {quotient_dim}")]
    NotIdempotentIdeal { quotient_dim: usize },

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("functor {functor} expects a module over {expected}")]
    WrongCategory {
        functor: &'static str,
        expected: &'static str,
    },

    #[error("no split surjection A^n -> j_!(P) found for n <= {budget}")]
    NoSplitSurjection { budget: usize },

    #[error("representation law fails for basis pair ({i}, {j})")]
    RepresentationLaw { i: usize, j: usize },

    #[error("unit does not act as the identity")]
    UnitAction,

    #[error("subspace is not stable under the action")]
    NotStable,

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("unknown label {0:?}")]
    UnknownLabel(String),
}
