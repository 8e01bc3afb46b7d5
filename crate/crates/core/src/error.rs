//! Crate-wide error type.
//!
//! Only genuine misuse or impossible inputs become errors. A decoder that
//! cannot produce a codeword is *not* an error; that outcome is reported
//! through [`crate::report::DecodeReport`].

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field GF({0}^2) exceeds the supported size bound q^2 <= 2^16")]
    FieldTooLarge(u64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("duplicate interpolation point")]
    DuplicatePoint,
    #[error("matrix rows are linearly dependent")]
    RankDeficient,
    #[error("no row has its leading position in the requested index set")]
    NoRowInIndexSet,
    #[error("series precision {have} is below the required {need}")]
    PrecisionTooLow { have: usize, need: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
