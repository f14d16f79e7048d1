//! Operadic layer around `MAss`.

pub mod algebra;
pub mod closure;
pub mod duality;
pub mod koszul;
pub mod mass;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OperadError {
    #[error("position {position} is not an input of an arity {arity} corolla")]
    PositionOutOfRange { position: usize, arity: usize },
    #[error("invalid corolla: {0}")]
    InvalidCorolla(String),
    #[error("graph has {0} vertices, expected one")]
    NotOneVertex(usize),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("malformed algebra table: {0}")]
    MalformedTable(String),
    #[error(transparent)]
    Complex(#[from] crate::complex::ComplexError),
}
