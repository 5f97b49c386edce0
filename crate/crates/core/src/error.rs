use thiserror::Error;

use crate::report::ValidationReport;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot embed Q(zeta_{from}) into Q(zeta_{to}): {from} does not divide {to}")]
    IncompatibleOrders { from: u32, to: u32 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("variable `{0}` is not assigned")]
    UnassignedVariable(String),
    #[error("variable `{0}` occurs with a negative exponent but is assigned zero")]
    ZeroAtNegativeExponent(String),
    #[error("matrix is singular")]
    Singular,
    #[error("{0} is not a unit of the coefficient domain")]
    NotUnit(String),
    #[error("not nilpotent: {0}")]
    NotNilpotent(String),
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("subspace is not stable under the representation: {0}")]
    NotStable(String),
    #[error("invalid ramification datum:\n{0}")]
    InvalidDatum(ValidationReport),
    #[error("invalid Weil-Deligne representation:\n{0}")]
    InvalidRep(ValidationReport),
    #[error("invalid block: {0}")]
    InvalidBlock(String),
    #[error("mismatched local data: {0}")]
    MismatchedLocalData(String),
    #[error("not Frobenius-semisimple: Phi is not semisimple")]
    NotFrobeniusSemisimple,
    #[error("undecidable: {0}")]
    Undecidable(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
