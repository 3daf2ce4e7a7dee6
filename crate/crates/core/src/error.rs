use num_bigint::BigInt;
use thiserror::Error;

/// Failures of the symbolic layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymError {
    #[error("arity mismatch: {left} vs {right} digit variables")]
    ArityMismatch { left: usize, right: usize },
    #[error("odd coefficient {coefficient} while halving {poly}")]
    OddCoefficient { coefficient: BigInt, poly: String },
    #[error("expected {expected} digit values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Sym(#[from] SymError),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("non-generic parameter: {0}")]
    NonGeneric(String),

    #[error("tuple {v} is not below v_rho = {v_rho}")]
    StratumViolation { v: String, v_rho: String },

    #[error("digit out of range: {0}")]
    DigitRange(String),

    #[error("exponent {exponent} factors through the norm (q = {q})")]
    NotTypeOne { exponent: u64, q: u64 },

    #[error("tuple {u} is not in P_Theta for exponent {exponent}")]
    InadmissibleTuple { u: String, exponent: u64 },

    #[error("symbolic shape violation: {0}")]
    ShapeViolation(String),

    #[error("(w, d) = ({w}, {d}) violates the admissibility relations")]
    RelationViolation { w: String, d: String },

    #[error("theorem path and oracle disagree for {context}: theorem-only {theorem_only:?}, oracle-only {oracle_only:?}")]
    MismatchDetected {
        context: String,
        theorem_only: Vec<u64>,
        oracle_only: Vec<u64>,
    },

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl Error {
    /// True for errors caused by bad input rather than by a failed check.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidParameter(_)
                | Error::NonGeneric(_)
                | Error::StratumViolation { .. }
                | Error::NotTypeOne { .. }
                | Error::RelationViolation { .. }
                | Error::InadmissibleTuple { .. }
                | Error::DigitRange(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
