use thiserror::Error;

use crate::field::LaurentElem;
use crate::witt::WittVec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field configuration: {0}")]
    Config(String),

    #[error("element is not a p-th power")]
    NotAPthPower,

    #[error("division by zero")]
    DivisionByZero,

    #[error("element is not invertible in F[pi, 1/pi]: {0}")]
    NotInvertible(String),

    #[error("parse error at position {position}: expected {expected}")]
    Parse { position: usize, expected: String },

    #[error("ghost recursion produced a non-integral coefficient (p = {p}, index {index})")]
    IntegralityFailure { p: u64, index: usize },

    #[error("witt length {len} with p = {p} exceeds the supported range (p <= 5, m <= 3)")]
    WittRange { p: u64, len: usize },

    #[error("form is not in filtration level {level}")]
    NotInFiltration { level: i64 },

    #[error("graded class is not in the image of the refined conductor map: {0}")]
    NotInBGr(String),

    #[error("outside the range of the refined map: {0}")]
    UnsupportedRange(String),

    #[error("theorem hypothesis not met: {0}")]
    OutOfTheoremRange(String),

    #[error("reduction budget exceeded; sw <= {sw_upper_bound}")]
    ReductionBudgetExceeded {
        sw_upper_bound: u64,
        best: Box<WittVec<LaurentElem>>,
    },

    #[error("mismatched witt lengths {0} and {1}")]
    LengthMismatch(usize, usize),

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
