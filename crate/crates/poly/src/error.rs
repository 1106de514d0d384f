use thiserror::Error;

use crate::MultiPoly;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolyError {
    #[error("operands live over different variable tables")]
    VarTableMismatch,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("not exactly divisible, remainder {remainder}")]
    NotDivisible { remainder: Box<MultiPoly> },
    #[error("denominator vanishes at the evaluation point")]
    Pole,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invariant violated: {0}")]
    Invariant(String),
}
