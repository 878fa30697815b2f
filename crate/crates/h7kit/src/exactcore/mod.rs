//! Exact arithmetic over Q and Q(ζ₇): scalars, sparse polynomials, dense
//! matrices and the polynomial text format.

pub mod cyc;
pub mod matrix;
pub mod mpoly;
pub mod ring;
pub mod text;

pub use cyc::{CycInt, CycNum};
pub use matrix::Mat;
pub use mpoly::{monomials, MPoly, Mono};
pub use ring::{rat, rat_int, Field, Rat, Ring, ToComplex};

#[derive(thiserror::Error, Debug, Clone, PartialEq)]
pub enum ExactError {
    #[error("division by zero")]
    InvalidScalar,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("singular matrix")]
    Singular,
    #[error("parse error: {0}")]
    Parse(String),
}
