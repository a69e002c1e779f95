//! Exact rational functions over the rationals in the named indeterminates
//! H, C and x, tagged by the ambient field they live in.

use std::fmt;

use num::traits::{One, Zero};

use super::poly::Poly2;
use super::rat::Rational;
use super::FieldError;

/// Ambient coefficient field: K, K(H), K(H,C) or K(x).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VarSet {
    /// Constants only.
    K,
    /// Rational functions in H.
    H,
    /// Rational functions in H and C.
    HC,
    /// Rational functions in x.
    X,
}

impl VarSet {
    /// Smallest common ambient field, if one exists. K embeds everywhere,
    /// K(H) embeds in K(H,C); K(x) is incompatible with the H-fields.
    pub fn join(self, other: VarSet) -> Option<VarSet> {
        use VarSet::*;
        match (self, other) {
            (K, v) | (v, K) => Some(v),
            (H, H) => Some(H),
            (H, HC) | (HC, H) | (HC, HC) => Some(HC),
            (X, X) => Some(X),
            _ => None,
        }
    }

    /// Display names for (v1, v2).
    pub fn var_names(self) -> (&'static str, &'static str) {
        match self {
            VarSet::X => ("x", "?"),
            _ => ("H", "C"),
        }
    }

    fn allows_v2(self) -> bool {
        matches!(self, VarSet::HC)
    }
}

/// A rational function in canonical form: numerator and denominator coprime,
/// denominator monic under the graded-lex order, zero stored as 0/1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFunc {
    num: Poly2,
    den: Poly2,
    vars: VarSet,
}

impl RatFunc {
    pub fn zero(vars: VarSet) -> Self {
        RatFunc {
            num: Poly2::zero(),
            den: Poly2::one(),
            vars,
        }
    }

    pub fn one(vars: VarSet) -> Self {
        RatFunc::constant(Rational::one(), vars)
    }

    pub fn constant(c: Rational, vars: VarSet) -> Self {
        RatFunc {
            num: Poly2::constant(c),
            den: Poly2::one(),
            vars,
        }
    }

    /// The generator H of K(H) or K(H,C).
    pub fn var_h(vars: VarSet) -> Self {
        assert!(matches!(vars, VarSet::H | VarSet::HC), "H not in {vars:?}");
        RatFunc {
            num: Poly2::var1(),
            den: Poly2::one(),
            vars,
        }
    }

    /// The generator C of K(H,C).
    pub fn var_c() -> Self {
        RatFunc {
            num: Poly2::var2(),
            den: Poly2::one(),
            vars: VarSet::HC,
        }
    }

    /// The generator x of K(x).
    pub fn var_x() -> Self {
        RatFunc {
            num: Poly2::var1(),
            den: Poly2::one(),
            vars: VarSet::X,
        }
    }

    /// Build from a polynomial numerator.
    pub fn from_poly(num: Poly2, vars: VarSet) -> Self {
        debug_assert!(vars.allows_v2() || num.deg_v2() == 0);
        RatFunc {
            num,
            den: Poly2::one(),
            vars,
        }
    }

    /// Build num/den in canonical form. Errors on zero denominator.
    pub fn new(num: Poly2, den: Poly2, vars: VarSet) -> Result<Self, FieldError> {
        if den.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let mut f = RatFunc { num, den, vars };
        f.canonicalize();
        Ok(f)
    }

    fn canonicalize(&mut self) {
        if self.num.is_zero() {
            self.den = Poly2::one();
            return;
        }
        let g = self.num.gcd(&self.den);
        if !g.as_constant().is_some_and(|c| c.is_one()) {
            self.num = self.num.divide(&g).expect("gcd divides numerator");
            self.den = self.den.divide(&g).expect("gcd divides denominator");
        }
        let (_, lc) = self.den.leading_term().expect("nonzero denominator");
        if !lc.is_one() {
            let inv = lc.recip();
            self.num = self.num.scale(&inv);
            self.den = self.den.scale(&inv);
        }
    }

    pub fn vars(&self) -> VarSet {
        self.vars
    }

    pub fn num(&self) -> &Poly2 {
        &self.num
    }

    pub fn den(&self) -> &Poly2 {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.as_constant().is_some_and(|c| c.is_one())
    }

    /// Constant value if this is an element of K.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_polynomial() {
            self.num.as_constant()
        } else {
            None
        }
    }

    /// True when the function only involves constants and C (lies in K(C)).
    pub fn in_kc(&self) -> bool {
        self.num.deg_v1() == 0 && self.den.deg_v1() == 0
    }

    fn promote(&self, vars: VarSet) -> RatFunc {
        RatFunc {
            num: self.num.clone(),
            den: self.den.clone(),
            vars,
        }
    }

    fn joined(&self, other: &RatFunc) -> Result<(RatFunc, RatFunc, VarSet), FieldError> {
        let v = self
            .vars
            .join(other.vars)
            .ok_or(FieldError::VarSetMismatch(self.vars, other.vars))?;
        Ok((self.promote(v), other.promote(v), v))
    }

    pub fn add(&self, other: &RatFunc) -> Result<RatFunc, FieldError> {
        let (a, b, v) = self.joined(other)?;
        let num = a.num.mul(&b.den).add(&b.num.mul(&a.den));
        let den = a.den.mul(&b.den);
        RatFunc::new(num, den, v)
    }

    pub fn sub(&self, other: &RatFunc) -> Result<RatFunc, FieldError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
            vars: self.vars,
        }
    }

    pub fn mul(&self, other: &RatFunc) -> Result<RatFunc, FieldError> {
        let (a, b, v) = self.joined(other)?;
        RatFunc::new(a.num.mul(&b.num), a.den.mul(&b.den), v)
    }

    pub fn div(&self, other: &RatFunc) -> Result<RatFunc, FieldError> {
        if other.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let (a, b, v) = self.joined(other)?;
        RatFunc::new(a.num.mul(&b.den), a.den.mul(&b.num), v)
    }

    pub fn recip(&self) -> Result<RatFunc, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        RatFunc::new(self.den.clone(), self.num.clone(), self.vars)
    }

    pub fn scale(&self, c: &Rational) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero(self.vars);
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
            vars: self.vars,
        }
    }

    pub fn pow(&self, n: i64) -> Result<RatFunc, FieldError> {
        let base = if n < 0 { self.recip()? } else { self.clone() };
        let mut acc = RatFunc::one(self.vars);
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul(&base)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (v1, v2) = self.vars.var_names();
        if self.is_polynomial() {
            write!(f, "{}", self.num.render(v1, v2))
        } else {
            write!(
                f,
                "({})/({})",
                self.num.render(v1, v2),
                self.den.render(v1, v2)
            )
        }
    }
}
