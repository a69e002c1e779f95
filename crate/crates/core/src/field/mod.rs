//! Exact coefficient arithmetic: arbitrary-precision rationals, the rational
//! function fields K(H), K(H,C), K(x), and the twisting endomorphisms.

pub mod endo;
pub mod poly;
pub mod rat;
pub mod ratfunc;

pub use endo::FieldEndo;
pub use poly::{Poly1, Poly2};
pub use rat::{rat, rat_int, Rational};
pub use ratfunc::{RatFunc, VarSet};

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("incompatible variable sets {0:?} and {1:?}")]
    VarSetMismatch(VarSet, VarSet),
    #[error("negative power of a derivation (derivations are not invertible)")]
    DerivNotInvertible,
    #[error("scale parameter {0} must not be 0 or ±1")]
    InvalidScaleParameter(Rational),
    #[error("endomorphism does not act on the field {0:?}")]
    EndoDomainMismatch(VarSet),
    #[error("periodicity hypothesis is about automorphisms, not derivations")]
    PeriodicityNeedsAutomorphism,
}
