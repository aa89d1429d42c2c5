// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Errors raised by the algebraic core (fields, linear algebra, codes, repair).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported field: {0}")]
    UnsupportedField(String),

    #[error("element {value} does not belong to a field of order {order}")]
    ForeignElement { value: u32, order: u32 },

    #[error("invalid digit vector: {0}")]
    InvalidDigits(String),

    #[error("inversion of zero")]
    DivisionByZero,

    #[error("elements are linearly dependent over the base field")]
    DependentBasis,

    #[error("expected {expected} values, got {got}")]
    WrongLength { expected: usize, got: usize },

    #[error("value does not lie in the base field")]
    NotInBaseField,

    #[error("invalid code parameters: {0}")]
    InvalidCode(String),

    #[error("point ({x}, {y}) is not on the curve")]
    NotOnCurve { x: u32, y: u32 },

    /// The known coordinates do not pin down a unique codeword.
    #[error("underdetermined: known coordinates have rank {rank}, code dimension is {needed}")]
    Underdetermined { rank: usize, needed: usize },

    /// The known coordinates are not the restriction of any codeword.
    #[error("inconsistent: known coordinates do not come from a codeword")]
    Inconsistent,

    #[error("no nonzero function in the space vanishes at position {0}")]
    NoUnitFunction(usize),

    #[error("no dual vector supported on the helper set is nonzero at position {0}")]
    NoDualVector(usize),

    /// A degree inequality required by the chosen repair construction fails.
    #[error("inequality {bound} violated: {detail}")]
    Precondition { bound: &'static str, detail: String },

    #[error("invalid repair request: {0}")]
    InvalidRepair(String),

    #[error("missing or malformed response from helper {0}")]
    MissingResponse(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
