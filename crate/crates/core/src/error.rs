use thiserror::Error;

use crate::field::FieldContext;

/// Which of the two multiplicity-vector axioms a raw row breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VectorAxiom {
    /// The last entry must be zero.
    LastEntryNonzero,
    /// A positive entry must be followed by itself minus one.
    DescentBroken,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("field context mismatch: {left} vs {right}")]
    ContextMismatch { left: FieldContext, right: FieldContext },

    #[error("sqrt part given in the rational field")]
    IrrationalInRationals,

    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid discriminant {0}: must be squarefree and not 0 or 1")]
    InvalidDiscriminant(i64),

    #[error("operation needs a nonzero polynomial")]
    ZeroPolynomial,

    #[error("point {0} appears more than once")]
    RepeatedPoint(String),

    #[error("multinomial parts sum to {sum}, expected {expected}")]
    PartsSumMismatch { sum: u64, expected: u64 },

    #[error("cofactor vanishes at the point")]
    CofactorVanishes,

    #[error("multiplicity vector axiom violated at index {index}: {axiom:?}")]
    VectorAxiom { index: usize, axiom: VectorAxiom },

    #[error("row {row} is not a multiplicity vector (index {index}: {axiom:?})")]
    RowAxiom {
        row: usize,
        index: usize,
        axiom: VectorAxiom,
    },

    #[error("column sum {sum} of column {column} exceeds bound {bound}")]
    ColumnSum { column: usize, sum: u64, bound: u64 },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("ragged matrix: row {row} has length {found}, expected {expected}")]
    Ragged { row: usize, found: usize, expected: usize },

    #[error("truncation index {ell} out of range 0..={n}")]
    TruncationOutOfRange { ell: usize, n: usize },

    #[error("support index {index} out of range 0..{n}")]
    SupportOutOfRange { index: usize, n: usize },

    #[error("enumeration budget of {budget} exceeded")]
    BudgetExceeded { budget: u64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("no column j < n with colsum_j = n - j")]
    NoSaturatedColumn,

    #[error("need at least {needed} points, got {found}")]
    TooFewPoints { needed: usize, found: usize },

    #[error("operation needs an ordered field (rational context)")]
    OrderedFieldRequired,

    #[error("root list inconsistent with polynomial: {0}")]
    RootListInconsistent(String),

    #[error("invalid interval: need a < b")]
    InvalidInterval,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal postcondition violated: {0}")]
    Postcondition(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
