use thiserror::Error;

use crate::ring::Ring;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Operands from different rings or algebras, or wrongly sized input.
    #[error("domain error: {0}")]
    Domain(String),
    #[error("{0} is not a unit")]
    NotAUnit(String),
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("invalid ring descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("operation requires a field, got {0}")]
    UnsupportedRing(Ring),
    #[error("exhaustive enumeration is limited to F_p with p <= 7, got {0}")]
    EnumerationTooLarge(Ring),
    #[error("input is not a homogeneous superderivation: {0}")]
    InputNotDerivation(String),
    #[error("internal contradiction: {0}")]
    InternalContradiction(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
