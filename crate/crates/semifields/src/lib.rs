//! Exact-arithmetic toolkit for finite presemifields and BEL-configurations.
//!
//! The crate builds canonical finite-field towers GF(p) ⊆ GF(q) ⊆ GF(q^n),
//! represents presemifield multiplications as cubical arrays, and implements
//! the operations that move between them: the six Knuth-orbit transforms,
//! generalized twisted fields with their closed-form isotopy test,
//! BEL-configurations with the explicit multiplication Σ gᵢ(fᵢ(x)·y), the
//! ⊥-transpose and symplectic constructions, the order-8 group acting on
//! r = 2 configurations, and brute-force isotopy search at small orders.
//!
//! Everything is exact: checks are exhaustive scans or linear algebra over
//! the field, never floating point.

pub mod bel;
mod conway;
pub mod gf;
pub mod gtf;
pub mod io;
pub mod isotopy;
pub mod linpoly;
pub mod mat;
pub mod rank2;
pub mod sample;
pub mod semifield;
pub mod verify;

pub use gf::{Aut, Elem, FieldCtx};
pub use linpoly::LinPoly;
pub use semifield::{CubicalMult, KnuthWord, Nuclei, SemifieldSpread};

/// Errors shared across the crate's mathematical operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field order {order} exceeds the supported maximum {max}")]
    FieldTooLarge { order: u64, max: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("singular map has no compositional inverse")]
    Singular,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(
        "multiplication is not a presemifield (some nonzero right multiplication is singular)"
    )]
    NotPresemifield,
    #[error("twisted-field parameters are not valid (improper or c lies in the product set)")]
    InvalidGtf,
    #[error("tuple dimensions fail the injectivity/surjectivity conditions")]
    DimsCheckFailed,
    #[error("configuration violates the BEL property")]
    NotBel,
    #[error("no spread element of the ambient Desarguesian spread lies inside W")]
    NotReducible,
    #[error("reduction below r = 2 is not defined")]
    ReductionTooSmall,
    #[error("cubical array is not symmetric")]
    NotSymmetric,
    #[error("multiplication is not in rank-two shape")]
    NotRankTwo,
    #[error("normalization found no suitable spread-line move")]
    NormalizationFailed,
    #[error("invalid stabilizer element: {0}")]
    InvalidStabilizer(String),
    #[error("search budget exceeded: order {order} is above the cap {budget}")]
    BudgetExceeded { order: u64, budget: u64 },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
