//! The field endomorphisms that twist the series rings: the shift σ(H)=H-1,
//! the scale τ(H)=λH (both fixing C and the constants) and the derivation
//! d/dx on K(x).

use super::rat::{is_rational_root_of_unity, Rational};
use super::ratfunc::{RatFunc, VarSet};
use super::FieldError;
use num::traits::Zero;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldEndo {
    /// H ↦ H - 1, an automorphism of K(H) and K(H,C).
    Shift,
    /// H ↦ λH with λ ∉ {0, ±1}; over Q this is exactly "λ not a root of unity".
    Scale(Rational),
    /// d/dx on K(x).
    Deriv,
}

impl FieldEndo {
    /// Construct the scale automorphism, rejecting λ ∈ {0, ±1}.
    pub fn scale(lambda: Rational) -> Result<FieldEndo, FieldError> {
        if lambda.is_zero() || is_rational_root_of_unity(&lambda) {
            return Err(FieldError::InvalidScaleParameter(lambda));
        }
        Ok(FieldEndo::Scale(lambda))
    }

    pub fn is_automorphism(&self) -> bool {
        !matches!(self, FieldEndo::Deriv)
    }

    fn check_domain(&self, f: &RatFunc) -> Result<(), FieldError> {
        let ok = match self {
            FieldEndo::Shift | FieldEndo::Scale(_) => {
                matches!(f.vars(), VarSet::K | VarSet::H | VarSet::HC)
            }
            FieldEndo::Deriv => matches!(f.vars(), VarSet::K | VarSet::X),
        };
        if ok {
            Ok(())
        } else {
            Err(FieldError::EndoDomainMismatch(f.vars()))
        }
    }

    /// Apply the endomorphism `power` times. Shift and Scale accept any
    /// integer power (they are invertible); Deriv requires power >= 0.
    pub fn apply(&self, f: &RatFunc, power: i64) -> Result<RatFunc, FieldError> {
        self.check_domain(f)?;
        match self {
            FieldEndo::Shift => RatFunc::new(
                f.num().shift_v1(power),
                f.den().shift_v1(power),
                f.vars(),
            ),
            FieldEndo::Scale(lambda) => RatFunc::new(
                f.num().scale_v1(lambda, power),
                f.den().scale_v1(lambda, power),
                f.vars(),
            ),
            FieldEndo::Deriv => {
                if power < 0 {
                    return Err(FieldError::DerivNotInvertible);
                }
                let mut g = f.clone();
                for _ in 0..power {
                    g = deriv_once(&g)?;
                }
                Ok(g)
            }
        }
    }

    /// Membership in the fixed structure: e(f) = f for the automorphisms,
    /// e(f) = 0 for the derivation. For the implemented endomorphisms this
    /// decides membership in L^σ resp. ker δ exactly.
    pub fn is_fixed(&self, f: &RatFunc) -> Result<bool, FieldError> {
        match self {
            FieldEndo::Deriv => Ok(self.apply(f, 1)?.is_zero()),
            _ => Ok(&self.apply(f, 1)? == f),
        }
    }

    /// Certify the aperiodicity hypothesis: if f ∉ L^σ then σ^i(f) ≠ f for
    /// every i >= 1. Over Q this holds unconditionally: a translation of a
    /// rational function that is non-constant in H has no positive period,
    /// and the scale parameter is never a root of unity, so the orbit of a
    /// non-fixed element under either automorphism is infinite.
    pub fn check_no_periodic(&self, f: &RatFunc) -> Result<bool, FieldError> {
        if matches!(self, FieldEndo::Deriv) {
            return Err(FieldError::PeriodicityNeedsAutomorphism);
        }
        self.check_domain(f)?;
        Ok(true)
    }
}

/// Quotient rule: (p/q)' = (p'q - pq')/q^2.
fn deriv_once(f: &RatFunc) -> Result<RatFunc, FieldError> {
    let p = f.num();
    let q = f.den();
    let num = p.derivative_v1().mul(q).sub(&p.mul(&q.derivative_v1()));
    RatFunc::new(num, q.mul(q), f.vars())
}
