//! Exact arithmetic for modular Collatz, pn+q and Conway amusical graphs.
//!
//! The library builds the three graph families on `Z_N`, evaluates their
//! adjacency-matrix determinants through closed-form order/Jacobi formulas,
//! and cross-checks every formula against an independent exact
//! linear-algebra oracle (fraction-free elimination, division-free
//! characteristic polynomials). Nonzero determinants are powers of two
//! (times 3 for the Conway family) whose exponents can reach hundreds of
//! thousands, so determinant values are kept in symbolic `sign * f * 2^e`
//! form throughout.

pub mod detvalue;
pub mod exactla;
pub mod formulas;
pub mod graphs;
pub mod numtheory;
pub mod permgraph;
pub mod scan;
pub mod tables;
pub mod verify;

pub use detvalue::DetValue;
pub use exactla::{BigMatrix, IntPolynomial};
pub use graphs::{GraphKind, ModularGraph};
pub use numtheory::Factorization;
pub use permgraph::Permutation;

use thiserror::Error;

/// Error cases shared by the whole crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus must be odd")]
    EvenModulus,
    #[error("{0} is not invertible modulo {1}")]
    NotInvertible(String, String),
    #[error("arguments are not coprime")]
    NotCoprime,
    #[error("modulus must not be divisible by 3")]
    NotCoprime3,
    #[error("modulus must be coprime to 6")]
    NotCoprime6,
    #[error("permutations act on different domain sizes ({0} vs {1})")]
    SizeMismatch(usize, usize),
    #[error("division by the zero polynomial")]
    DivisionByZeroPoly,
    #[error("order hint is not a multiple of the actual order")]
    InvalidHint,
    #[error("invalid input: {0}")]
    InvalidInput(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
