use num_bigint::BigUint;
use thiserror::Error;

use crate::gf::GfError;
use crate::numbers::NumbersError;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Numbers(#[from] NumbersError),
    #[error("matrix is singular")]
    Singular,
    #[error("matrix order does not divide {bound}")]
    OrderDoesNotDivide { bound: BigUint },
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("matrices are over different fields")]
    FieldMismatch,
    #[error("Weyl element needs a nonzero parameter")]
    ZeroWeylParameter,
    #[error("unknown root label {0:?}")]
    UnknownRoot(String),
    #[error("group too large: closure exceeded the bound of {bound} elements")]
    GroupTooLarge { bound: usize },
    #[error("exhaustive unipotent census is limited to q <= 27, got q = {0}")]
    CensusTooLarge(BigUint),
    #[error("malformed input: {0}")]
    Input(String),
    #[error("spectrum member {member} has prime divisor {prime} not dividing the group order")]
    SpectrumInconsistent { member: BigUint, prime: BigUint },
    /// A closed-form count failed an exactness check; this means a formula was transcribed wrongly.
    #[error("internal formula error: {0}")]
    Formula(String),
}

pub type Result<T> = std::result::Result<T, Error>;
