//! Truncated arithmetic in skew Laurent series rings L[[X,X⁻¹;σ]] and formal
//! pseudo-differential operator rings L((t⁻¹;δ)).
//!
//! A series knows its coefficients on a contiguous window of exponents and
//! nothing below it. Arithmetic tracks the guaranteed-correct window of each
//! result: for a product the window floor is max(floor_a + top_b,
//! floor_b + top_a), which reproduces the min-of-windows rule after the
//! degree shift. "Equal within window" therefore compares only coefficients
//! both sides actually guarantee.
//!
//! The exact zero series (all coefficients known to vanish) is distinguished
//! from a computed series whose whole window cancelled to zero; the latter is
//! reported as zero-within-window and treated conservatively downstream.

use std::collections::BTreeMap;
use std::fmt;

use num::traits::One;

use crate::degree::Degree;
use crate::field::endo::FieldEndo;
use crate::field::rat::{binomial, Rational};
use crate::field::ratfunc::{RatFunc, VarSet};
use crate::field::FieldError;
use crate::weyl::{AlgebraPresentation, WeylLikeElement};

use thiserror::Error;

pub const DEFAULT_WINDOW: u32 = 8;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum SeriesError {
    #[error("series live in different rings")]
    RingMismatch,
    #[error("operation requires a series with a known nonzero leading term")]
    NoLeadingTerm,
    #[error("coefficient field error: {0}")]
    Field(#[from] FieldError),
    #[error("no embedding defined for this presentation/ring pair")]
    UndefinedEmbedding,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingKind {
    SkewLaurent,
    PseudoDiff,
}

/// Which series ring we are working in: kind, coefficient field and twist.
#[derive(Clone, Debug, PartialEq)]
pub struct RingTag {
    kind: RingKind,
    vars: VarSet,
    twist: FieldEndo,
}

impl RingTag {
    /// 𝒜 = K(H)[[X,X⁻¹;σ]], σ(H) = H-1.
    pub fn skew_a() -> RingTag {
        RingTag {
            kind: RingKind::SkewLaurent,
            vars: VarSet::H,
            twist: FieldEndo::Shift,
        }
    }

    /// ℬ_λ = K(H)[[X,X⁻¹;τ]], τ(H) = λH.
    pub fn skew_b(lambda: Rational) -> Result<RingTag, FieldError> {
        Ok(RingTag {
            kind: RingKind::SkewLaurent,
            vars: VarSet::H,
            twist: FieldEndo::scale(lambda)?,
        })
    }

    /// 𝒞 = K(H,C)[[X,X⁻¹;σ]], σ(H) = H-1, σ(C) = C.
    pub fn skew_c() -> RingTag {
        RingTag {
            kind: RingKind::SkewLaurent,
            vars: VarSet::HC,
            twist: FieldEndo::Shift,
        }
    }

    /// ℰ_λ = K(H,C)[[X,X⁻¹;τ]], τ(H) = λH, τ(C) = C.
    pub fn skew_e(lambda: Rational) -> Result<RingTag, FieldError> {
        Ok(RingTag {
            kind: RingKind::SkewLaurent,
            vars: VarSet::HC,
            twist: FieldEndo::scale(lambda)?,
        })
    }

    /// ℛ = K(x)((t⁻¹;δ)), δ = d/dx.
    pub fn pdiff_r() -> RingTag {
        RingTag {
            kind: RingKind::PseudoDiff,
            vars: VarSet::X,
            twist: FieldEndo::Deriv,
        }
    }

    pub fn kind(&self) -> RingKind {
        self.kind
    }

    pub fn vars(&self) -> VarSet {
        self.vars
    }

    pub fn twist(&self) -> &FieldEndo {
        &self.twist
    }

    /// Name of the series generator: X for skew Laurent, t for pseudo-diff.
    pub fn gen_name(&self) -> &'static str {
        match self.kind {
            RingKind::SkewLaurent => "X",
            RingKind::PseudoDiff => "t",
        }
    }

    pub fn name(&self) -> String {
        match (self.kind, self.vars, &self.twist) {
            (RingKind::SkewLaurent, VarSet::H, FieldEndo::Shift) => "A".into(),
            (RingKind::SkewLaurent, VarSet::H, FieldEndo::Scale(l)) => {
                format!("B[{}]", crate::field::rat::format_rational(l))
            }
            (RingKind::SkewLaurent, VarSet::HC, FieldEndo::Shift) => "C".into(),
            (RingKind::SkewLaurent, VarSet::HC, FieldEndo::Scale(l)) => {
                format!("E[{}]", crate::field::rat::format_rational(l))
            }
            (RingKind::PseudoDiff, _, _) => "R".into(),
            _ => "?".into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesStatus {
    /// All coefficients are known to be zero.
    ExactZero,
    /// Every coefficient in the guaranteed window is zero; below is unknown.
    ZeroWithinWindow,
    Nonzero,
}

/// Truncated (inverse Laurent) series: coefficients are exactly known for all
/// exponents >= floor; `None` floor means known everywhere (only the exact
/// zero series). Stored coefficients are nonzero and lie at exponents >= floor.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries {
    ring: RingTag,
    floor: Option<i64>,
    coeffs: BTreeMap<i64, RatFunc>,
}

impl TruncatedSeries {
    pub fn zero(ring: RingTag) -> Self {
        TruncatedSeries {
            ring,
            floor: None,
            coeffs: BTreeMap::new(),
        }
    }

    /// c·X^e with the window of `window` retained exponents below e; a zero
    /// coefficient gives the exact zero series.
    pub fn monomial(ring: RingTag, c: RatFunc, e: i64, window: u32) -> Self {
        assert!(window >= 1);
        if c.is_zero() {
            return TruncatedSeries::zero(ring);
        }
        let mut coeffs = BTreeMap::new();
        coeffs.insert(e, c);
        TruncatedSeries {
            ring,
            floor: Some(e - window as i64 + 1),
            coeffs,
        }
    }

    pub fn one(ring: RingTag, window: u32) -> Self {
        let v = ring.vars;
        TruncatedSeries::monomial(ring, RatFunc::one(v), 0, window)
    }

    /// The series generator X (resp. t).
    pub fn gen(ring: RingTag, window: u32) -> Self {
        let v = ring.vars;
        TruncatedSeries::monomial(ring, RatFunc::one(v), 1, window)
    }

    /// A coefficient-field element placed at exponent 0.
    pub fn scalar(ring: RingTag, c: RatFunc, window: u32) -> Self {
        TruncatedSeries::monomial(ring, c, 0, window)
    }

    /// Build from explicit (exponent, coefficient) terms with the window
    /// floor at `top - window + 1` where top is the largest exponent given.
    pub fn from_terms(
        ring: RingTag,
        terms: impl IntoIterator<Item = (i64, RatFunc)>,
        window: u32,
    ) -> Self {
        assert!(window >= 1);
        let mut coeffs = BTreeMap::new();
        for (e, c) in terms {
            if !c.is_zero() {
                coeffs.insert(e, c);
            }
        }
        let top = coeffs.keys().next_back().copied().unwrap_or(0);
        let floor = Some(top - window as i64 + 1);
        let mut s = TruncatedSeries { ring, floor, coeffs };
        s.prune();
        s
    }

    fn prune(&mut self) {
        if let Some(f) = self.floor {
            self.coeffs.retain(|e, c| *e >= f && !c.is_zero());
        } else {
            self.coeffs.retain(|_, c| !c.is_zero());
        }
    }

    pub fn ring(&self) -> &RingTag {
        &self.ring
    }

    /// Lowest exponent with a guaranteed coefficient; None = known everywhere.
    pub fn floor(&self) -> Option<i64> {
        self.floor
    }

    /// Largest stored exponent (the degree when nonzero).
    pub fn top(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn status(&self) -> SeriesStatus {
        if !self.coeffs.is_empty() {
            SeriesStatus::Nonzero
        } else if self.floor.is_none() {
            SeriesStatus::ExactZero
        } else {
            SeriesStatus::ZeroWithinWindow
        }
    }

    pub fn is_zero_within_window(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The degree; -∞ when no nonzero coefficient is known.
    pub fn degree(&self) -> Degree {
        self.top().map_or(Degree::NegInf, Degree::Finite)
    }

    /// Leading (coefficient, exponent); error when nothing is known nonzero.
    pub fn leading(&self) -> Result<(RatFunc, i64), SeriesError> {
        let top = self.top().ok_or(SeriesError::NoLeadingTerm)?;
        Ok((self.coeffs[&top].clone(), top))
    }

    /// Coefficient at exponent e; None when e is below the knowledge floor.
    pub fn coeff(&self, e: i64) -> Option<RatFunc> {
        match self.floor {
            Some(f) if e < f => None,
            _ => Some(
                self.coeffs
                    .get(&e)
                    .cloned()
                    .unwrap_or_else(|| RatFunc::zero(self.ring.vars)),
            ),
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &RatFunc)> {
        self.coeffs.iter()
    }

    /// Number of retained exponent slots; None for the exact zero.
    pub fn window_len(&self) -> Option<i64> {
        let f = self.floor?;
        Some(self.virtual_top() - f + 1)
    }

    /// Top for window bookkeeping: highest exponent that could be nonzero.
    fn virtual_top(&self) -> i64 {
        match (self.top(), self.floor) {
            (Some(t), _) => t,
            (None, Some(f)) => f - 1,
            (None, None) => 0,
        }
    }

    fn check_ring(&self, other: &TruncatedSeries) -> Result<(), SeriesError> {
        if self.ring != other.ring {
            return Err(SeriesError::RingMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
        self.check_ring(other)?;
        let floor = match (self.floor, other.floor) {
            (None, f) | (f, None) => f,
            (Some(a), Some(b)) => Some(a.max(b)),
        };
        let mut coeffs = self.coeffs.clone();
        for (e, c) in &other.coeffs {
            let entry = coeffs
                .remove(e)
                .unwrap_or_else(|| RatFunc::zero(self.ring.vars));
            let s = entry.add(c)?;
            if !s.is_zero() {
                coeffs.insert(*e, s);
            }
        }
        let mut out = TruncatedSeries {
            ring: self.ring.clone(),
            floor,
            coeffs,
        };
        out.prune();
        Ok(out)
    }

    pub fn sub(&self, other: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> TruncatedSeries {
        TruncatedSeries {
            ring: self.ring.clone(),
            floor: self.floor,
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &RatFunc) -> Result<TruncatedSeries, SeriesError> {
        // Left multiplication by a coefficient-field element.
        let mut coeffs = BTreeMap::new();
        for (e, a) in &self.coeffs {
            let v = c.mul(a)?;
            if !v.is_zero() {
                coeffs.insert(*e, v);
            }
        }
        Ok(TruncatedSeries {
            ring: self.ring.clone(),
            floor: self.floor,
            coeffs,
        })
    }

    pub fn scale_rat(&self, c: &Rational) -> TruncatedSeries {
        TruncatedSeries {
            ring: self.ring.clone(),
            floor: self.floor,
            coeffs: if c == &Rational::from_integer(0.into()) {
                BTreeMap::new()
            } else {
                self.coeffs.iter().map(|(e, a)| (*e, a.scale(c))).collect()
            },
        }
    }

    /// Product with twisting: X^j l = σ^j(l) X^j in the skew Laurent case,
    /// t^j l = Σ_{k≥0} C(j,k) δ^k(l) t^(j-k) in the pseudo-differential case
    /// (generalized binomials make the same formula cover negative j; the
    /// negative-power rule is validated by the (t⁻¹·r)·t = t⁻¹·(r·t) test).
    pub fn mul(&self, other: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
        self.check_ring(other)?;
        if self.status() == SeriesStatus::ExactZero || other.status() == SeriesStatus::ExactZero {
            return Ok(TruncatedSeries::zero(self.ring.clone()));
        }
        let fa = self.floor.expect("nonzero series has a floor");
        let fb = other.floor.expect("nonzero series has a floor");
        let ta = self.virtual_top();
        let tb = other.virtual_top();
        let floor = (fa + tb).max(fb + ta);
        let mut acc: BTreeMap<i64, RatFunc> = BTreeMap::new();
        let mut add_term = |e: i64, c: RatFunc| -> Result<(), SeriesError> {
            if c.is_zero() || e < floor {
                return Ok(());
            }
            let cur = acc.remove(&e).unwrap_or_else(|| RatFunc::zero(self.ring.vars));
            let s = cur.add(&c)?;
            if !s.is_zero() {
                acc.insert(e, s);
            }
            Ok(())
        };
        match self.ring.kind {
            RingKind::SkewLaurent => {
                for (j, aj) in &self.coeffs {
                    for (k, bk) in &other.coeffs {
                        let tw = self.ring.twist.apply(bk, *j)?;
                        add_term(j + k, aj.mul(&tw)?)?;
                    }
                }
            }
            RingKind::PseudoDiff => {
                for (j, aj) in &self.coeffs {
                    for (k, bk) in &other.coeffs {
                        let mut dk = bk.clone(); // δ^n(bk), n = 0 to start
                        let mut n: u32 = 0;
                        loop {
                            let e = j + k - n as i64;
                            if e < floor {
                                break;
                            }
                            if *j >= 0 && (n as i64) > *j {
                                break; // binomial C(j, n) vanishes
                            }
                            let b = Rational::from_integer(binomial(*j, n));
                            add_term(e, aj.mul(&dk.scale(&b))?)?;
                            if dk.is_zero() {
                                break;
                            }
                            dk = self.ring.twist.apply(&dk, 1)?;
                            n += 1;
                        }
                    }
                }
            }
        }
        Ok(TruncatedSeries {
            ring: self.ring.clone(),
            floor: Some(floor),
            coeffs: acc,
        })
    }

    /// [self, other].
    pub fn commutator(&self, other: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// Multiplicative inverse within the window: the result has degree
    /// -deg(self) and the same window length; self · result = 1 within it.
    pub fn inv(&self) -> Result<TruncatedSeries, SeriesError> {
        let (alpha, n) = self.leading()?;
        let w = self.window_len().expect("leading implies finite window");
        let gamma0 = match self.ring.kind {
            RingKind::SkewLaurent => self.ring.twist.apply(&alpha.recip()?, -n)?,
            RingKind::PseudoDiff => alpha.recip()?,
        };
        let mut b = TruncatedSeries::monomial(self.ring.clone(), gamma0, -n, w as u32);
        let one = TruncatedSeries::one(self.ring.clone(), w as u32);
        loop {
            let r = one.sub(&self.mul(&b)?)?;
            let Some(e) = r.top() else {
                return Ok(b);
            };
            let rho = r.coeffs[&e].clone();
            let gamma = match self.ring.kind {
                RingKind::SkewLaurent => self.ring.twist.apply(&alpha.recip()?.mul(&rho)?, -n)?,
                RingKind::PseudoDiff => alpha.recip()?.mul(&rho)?,
            };
            let corr = TruncatedSeries::monomial(self.ring.clone(), gamma, e - n, w as u32);
            b = b.add(&corr)?;
        }
    }

    pub fn pow(&self, k: i64) -> Result<TruncatedSeries, SeriesError> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let w = self
            .window_len()
            .map(|w| w as u32)
            .unwrap_or(DEFAULT_WINDOW);
        let mut acc = TruncatedSeries::one(self.ring.clone(), w);
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base)?;
        }
        Ok(acc)
    }

    /// Equality of all coefficients both sides guarantee.
    pub fn eq_within(&self, other: &TruncatedSeries) -> bool {
        if self.ring != other.ring {
            return false;
        }
        let floor = match (self.floor, other.floor) {
            (None, None) => return self.coeffs == other.coeffs,
            (Some(a), Some(b)) => a.max(b),
            (Some(a), None) => a,
            (None, Some(b)) => b,
        };
        let keys: std::collections::BTreeSet<i64> = self
            .coeffs
            .keys()
            .chain(other.coeffs.keys())
            .copied()
            .filter(|e| *e >= floor)
            .collect();
        keys.into_iter()
            .all(|e| self.coeffs.get(&e) == other.coeffs.get(&e))
    }

    pub fn is_one_within(&self) -> bool {
        self.coeffs.len() == 1
            && self
                .coeffs
                .get(&0)
                .is_some_and(|c| c.is_one())
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = self.ring.gen_name();
        if self.coeffs.is_empty() {
            match self.floor {
                None => return write!(f, "0"),
                Some(fl) => return write!(f, "0 + O({}^{})", g, fl - 1),
            }
        }
        let mut parts = Vec::new();
        for (e, c) in self.coeffs.iter().rev() {
            let cs = format!("{}", c);
            let body = if *e == 0 {
                if c.is_one() {
                    "1".to_string()
                } else {
                    cs
                }
            } else {
                let xp = if *e == 1 {
                    g.to_string()
                } else {
                    format!("{}^{}", g, e)
                };
                if c.is_one() {
                    xp
                } else if cs.contains(['+', '-', ' ']) && !cs.starts_with('(') {
                    format!("({})*{}", cs, xp)
                } else {
                    format!("{}*{}", cs, xp)
                }
            };
            parts.push(body);
        }
        write!(f, "{}", parts.join(" + "))?;
        if let Some(fl) = self.floor {
            write!(f, " + O({}^{})", g, fl - 1)?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Lifting normal-form elements into series rings
// ---------------------------------------------------------------------------

/// Generator images of the presentation in the given ring, when defined:
/// A1 → 𝒜 (x→X, ∂→HX⁻¹), A1 → ℛ (x→x, ∂→t), quantum plane → ℬ_λ
/// (x→X, y→HX⁻¹), quantum Weyl → ℬ_μ (∂→X, x→(μ-1)⁻¹(H-1)X⁻¹).
pub fn generator_images(
    pres: &AlgebraPresentation,
    ring: &RingTag,
    window: u32,
) -> Result<(TruncatedSeries, TruncatedSeries), SeriesError> {
    let h = || RatFunc::var_h(ring.vars);
    match (pres, ring.kind, &ring.twist) {
        (AlgebraPresentation::Weyl, RingKind::SkewLaurent, FieldEndo::Shift)
            if ring.vars == VarSet::H =>
        {
            let x = TruncatedSeries::gen(ring.clone(), window);
            let d = TruncatedSeries::monomial(ring.clone(), h(), -1, window);
            Ok((x, d))
        }
        (AlgebraPresentation::Weyl, RingKind::PseudoDiff, FieldEndo::Deriv) => {
            let x = TruncatedSeries::scalar(ring.clone(), RatFunc::var_x(), window);
            let d = TruncatedSeries::gen(ring.clone(), window);
            Ok((x, d))
        }
        (AlgebraPresentation::QuantumPlane(l), RingKind::SkewLaurent, FieldEndo::Scale(l2))
            if ring.vars == VarSet::H && l == l2 =>
        {
            let x = TruncatedSeries::gen(ring.clone(), window);
            let y = TruncatedSeries::monomial(ring.clone(), h(), -1, window);
            Ok((x, y))
        }
        (AlgebraPresentation::QuantumWeyl(mu), RingKind::SkewLaurent, FieldEndo::Scale(m2))
            if ring.vars == VarSet::H && mu == m2 =>
        {
            // ∂ → X, x → (μ-1)⁻¹(H-1)X⁻¹ (the relation then maps to exactly 1).
            let mu_m1 = RatFunc::constant(mu - Rational::one(), VarSet::H);
            let coeff = h()
                .sub(&RatFunc::one(VarSet::H))?
                .div(&mu_m1)?;
            let x = TruncatedSeries::monomial(ring.clone(), coeff, -1, window);
            let d = TruncatedSeries::gen(ring.clone(), window);
            Ok((x, d))
        }
        _ => Err(SeriesError::UndefinedEmbedding),
    }
}

/// Image of a normal-form element under the presentation/ring embedding,
/// truncated at the given window.
pub fn lift_weyl_like(
    elem: &WeylLikeElement,
    ring: &RingTag,
    window: u32,
) -> Result<TruncatedSeries, SeriesError> {
    let (gx, gd) = generator_images(elem.presentation(), ring, window)?;
    let max_i = elem.coeffs().keys().map(|(i, _)| *i).max().unwrap_or(0);
    let max_j = elem.coeffs().keys().map(|(_, j)| *j).max().unwrap_or(0);
    let mut xpow = Vec::with_capacity(max_i as usize + 1);
    xpow.push(TruncatedSeries::one(ring.clone(), window));
    for i in 0..max_i {
        let nx = xpow[i as usize].mul(&gx)?;
        xpow.push(nx);
    }
    let mut dpow = Vec::with_capacity(max_j as usize + 1);
    dpow.push(TruncatedSeries::one(ring.clone(), window));
    for j in 0..max_j {
        let nd = dpow[j as usize].mul(&gd)?;
        dpow.push(nd);
    }
    let mut out = TruncatedSeries::zero(ring.clone());
    for ((i, j), c) in elem.coeffs() {
        let m = xpow[*i as usize].mul(&dpow[*j as usize])?;
        out = out.add(&m.scale_rat(c))?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat::{rat_int, rat};

    fn ha() -> RatFunc {
        RatFunc::var_h(VarSet::H)
    }

    fn xgen(w: u32) -> TruncatedSeries {
        TruncatedSeries::gen(RingTag::skew_a(), w)
    }

    fn hx_inv(w: u32) -> TruncatedSeries {
        TruncatedSeries::monomial(RingTag::skew_a(), ha(), -1, w)
    }

    #[test]
    fn weyl_relation_in_skew_laurent() {
        // (HX⁻¹)X = H, X(HX⁻¹) = (H-1)X X⁻¹ = H-1, commutator = 1
        let p = hx_inv(8).mul(&xgen(8)).unwrap();
        assert_eq!(p.coeff(0).unwrap(), ha());
        let q = xgen(8).mul(&hx_inv(8)).unwrap();
        let hm1 = ha().sub(&RatFunc::one(VarSet::H)).unwrap();
        assert_eq!(q.coeff(0).unwrap(), hm1);
        let c = hx_inv(8).commutator(&xgen(8)).unwrap();
        assert!(c.is_one_within());
    }

    #[test]
    fn pseudo_diff_commutation() {
        // t·x = x·t + 1
        let r = RingTag::pdiff_r();
        let t = TruncatedSeries::gen(r.clone(), 8);
        let x = TruncatedSeries::scalar(r.clone(), RatFunc::var_x(), 8);
        let p = t.mul(&x).unwrap();
        assert_eq!(p.coeff(1).unwrap(), RatFunc::var_x());
        assert_eq!(p.coeff(0).unwrap(), RatFunc::one(VarSet::X));
        // t⁻¹·x = x t⁻¹ - t⁻² within window
        let tinv = t.inv().unwrap();
        let q = tinv.mul(&x).unwrap();
        assert_eq!(q.coeff(-1).unwrap(), RatFunc::var_x());
        assert_eq!(q.coeff(-2).unwrap(), RatFunc::one(VarSet::X).neg());
        assert!(q.coeff(-3).unwrap().is_zero());
        // oracle: (t⁻¹·x)·t agrees with t⁻¹·(x·t)
        let lhs = q.mul(&t).unwrap();
        let rhs = tinv.mul(&x.mul(&t).unwrap()).unwrap();
        assert!(lhs.eq_within(&rhs));
    }

    #[test]
    fn negative_power_rule_consistency_random() {
        // (t⁻¹·r)·t = t⁻¹·(r·t) for assorted r ∈ K(x) and windows up to 12
        let r = RingTag::pdiff_r();
        let x = RatFunc::var_x();
        let samples = vec![
            x.clone(),
            x.pow(3).unwrap(),
            x.recip().unwrap(),
            x.pow(2).unwrap().add(&RatFunc::one(VarSet::X)).unwrap().recip().unwrap(),
            x.pow(2).unwrap().sub(&x).unwrap(),
        ];
        for w in [4u32, 8, 12] {
            let t = TruncatedSeries::gen(r.clone(), w);
            let tinv = t.inv().unwrap();
            for f in &samples {
                let s = TruncatedSeries::scalar(r.clone(), f.clone(), w);
                let lhs = tinv.mul(&s).unwrap().mul(&t).unwrap();
                let rhs = tinv.mul(&s.mul(&t).unwrap()).unwrap();
                assert!(lhs.eq_within(&rhs), "window {w}, r = {f}");
            }
        }
    }

    #[test]
    fn inverses() {
        // inv(X) = X⁻¹
        let xi = xgen(8).inv().unwrap();
        assert_eq!(xi.degree(), Degree::Finite(-1));
        assert!(xi.mul(&xgen(8)).unwrap().is_one_within());
        assert!(xgen(8).mul(&xi).unwrap().is_one_within());
        // inv(H) = 1/H at exponent 0
        let h = TruncatedSeries::scalar(RingTag::skew_a(), ha(), 8);
        let hi = h.inv().unwrap();
        assert_eq!(hi.coeff(0).unwrap(), ha().recip().unwrap());
        // inv(1 - X⁻¹) = 1 + X⁻¹ + X⁻² + ...
        let one = TruncatedSeries::one(RingTag::skew_a(), 8);
        let u = one
            .sub(&TruncatedSeries::monomial(
                RingTag::skew_a(),
                RatFunc::one(VarSet::H),
                -1,
                8,
            ))
            .unwrap();
        let ui = u.inv().unwrap();
        for e in -7..=0 {
            assert!(ui.coeff(e).unwrap().is_one(), "coeff at {e}");
        }
        assert!(u.mul(&ui).unwrap().is_one_within());
        // zero has no inverse
        assert!(TruncatedSeries::zero(RingTag::skew_a()).inv().is_err());
    }

    #[test]
    fn pseudo_diff_inverse() {
        let r = RingTag::pdiff_r();
        let t = TruncatedSeries::gen(r.clone(), 8);
        let x = TruncatedSeries::scalar(r.clone(), RatFunc::var_x(), 8);
        let u = t.add(&x).unwrap(); // t + x
        let ui = u.inv().unwrap();
        assert!(u.mul(&ui).unwrap().is_one_within());
        assert!(ui.mul(&u).unwrap().is_one_within());
        assert_eq!(ui.degree(), Degree::Finite(-1));
    }

    #[test]
    fn degrees_and_leading() {
        assert_eq!(hx_inv(8).degree(), Degree::Finite(-1));
        assert_eq!(
            TruncatedSeries::zero(RingTag::skew_a()).degree(),
            Degree::NegInf
        );
        let (c, e) = hx_inv(8).leading().unwrap();
        assert_eq!((c, e), (ha(), -1));
        let a = hx_inv(8)
            .add(&TruncatedSeries::monomial(
                RingTag::skew_a(),
                RatFunc::one(VarSet::H),
                -2,
                8,
            ))
            .unwrap();
        assert_eq!(a.leading().unwrap(), (ha(), -1));
        // leading of a product: a_n σ^n(b_m)
        let l = xgen(8).mul(&hx_inv(8)).unwrap().leading().unwrap();
        let hm1 = ha().sub(&RatFunc::one(VarSet::H)).unwrap();
        assert_eq!(l, (hm1, 0));
    }

    #[test]
    fn degree_additivity_and_windows() {
        let a = xgen(8).add(&TruncatedSeries::one(RingTag::skew_a(), 8)).unwrap();
        let b = hx_inv(6);
        let p = a.mul(&b).unwrap();
        assert_eq!(
            p.degree(),
            a.degree().plus(b.degree())
        );
        // product window = min of windows
        assert_eq!(p.window_len(), Some(6));
        // sum window: intersection of floors
        let s = a.add(&b).unwrap();
        assert_eq!(s.floor(), Some((-6i64).max(1 - 8 + 1)));
    }

    #[test]
    fn zero_within_window_vs_exact_zero() {
        let z = TruncatedSeries::zero(RingTag::skew_a());
        assert_eq!(z.status(), SeriesStatus::ExactZero);
        let d = xgen(8).sub(&xgen(8)).unwrap();
        assert_eq!(d.status(), SeriesStatus::ZeroWithinWindow);
        assert_eq!(d.degree(), Degree::NegInf);
        // exact zero multiplies to exact zero
        assert_eq!(z.mul(&xgen(8)).unwrap().status(), SeriesStatus::ExactZero);
    }

    #[test]
    fn associativity_within_common_window() {
        let a = xgen(8).add(&hx_inv(8)).unwrap();
        let b = hx_inv(8)
            .mul(&hx_inv(8))
            .unwrap()
            .add(&TruncatedSeries::one(RingTag::skew_a(), 8))
            .unwrap();
        let c = xgen(8).inv().unwrap().add(&xgen(8)).unwrap();
        let lhs = a.mul(&b).unwrap().mul(&c).unwrap();
        let rhs = a.mul(&b.mul(&c).unwrap()).unwrap();
        assert!(lhs.eq_within(&rhs));
        // pseudo-diff triple
        let r = RingTag::pdiff_r();
        let t = TruncatedSeries::gen(r.clone(), 8);
        let x = TruncatedSeries::scalar(r.clone(), RatFunc::var_x(), 8);
        let u = t.add(&x).unwrap();
        let v = t.inv().unwrap();
        let w = x.mul(&t).unwrap();
        let lhs = u.mul(&v).unwrap().mul(&w).unwrap();
        let rhs = u.mul(&v.mul(&w).unwrap()).unwrap();
        assert!(lhs.eq_within(&rhs));
    }

    #[test]
    fn ring_mismatch_rejected() {
        let a = xgen(8);
        let b = TruncatedSeries::gen(RingTag::skew_b(rat_int(2)).unwrap(), 8);
        assert!(matches!(a.mul(&b), Err(SeriesError::RingMismatch)));
    }

    #[test]
    fn lift_weyl_elements() {
        let w = AlgebraPresentation::Weyl;
        let x = WeylLikeElement::gen_x(w.clone());
        let d = WeylLikeElement::gen_d(w.clone());
        let ring = RingTag::skew_a();
        // x → X
        let lx = lift_weyl_like(&x, &ring, 8).unwrap();
        assert!(lx.eq_within(&xgen(8)));
        // 1 → 1
        let l1 = lift_weyl_like(&WeylLikeElement::one(w.clone()), &ring, 8).unwrap();
        assert!(l1.is_one_within());
        // ∂x = x∂ + 1 → H
        let dx = d.mul(&x).unwrap();
        let ldx = lift_weyl_like(&dx, &ring, 8).unwrap();
        assert_eq!(ldx.coeff(0).unwrap(), ha());
        assert_eq!(ldx.degree(), Degree::Finite(0));
        // homomorphy: lift(a·b) = lift(a)·lift(b) within window
        let a = x.pow(2).unwrap().add(&d).unwrap();
        let b = d.pow(2).unwrap().sub(&x).unwrap();
        let lab = lift_weyl_like(&a.mul(&b).unwrap(), &ring, 8).unwrap();
        let la = lift_weyl_like(&a, &ring, 8).unwrap();
        let lb = lift_weyl_like(&b, &ring, 8).unwrap();
        assert!(lab.eq_within(&la.mul(&lb).unwrap()));
        // degree of the image of x^i∂^j is i - j
        for (i, j) in [(2u32, 1u32), (0, 3), (4, 0), (2, 2)] {
            let m = WeylLikeElement::monomial(w.clone(), rat_int(1), i, j);
            let lm = lift_weyl_like(&m, &ring, 8).unwrap();
            assert_eq!(lm.degree(), Degree::Finite(i as i64 - j as i64));
        }
        // undefined pairs are rejected
        assert!(matches!(
            lift_weyl_like(&x, &RingTag::skew_c(), 8),
            Err(SeriesError::UndefinedEmbedding)
        ));
    }

    #[test]
    fn lift_into_pseudo_diff() {
        // A1 → ℛ: the defining relation maps to t·x - x·t = 1
        let w = AlgebraPresentation::Weyl;
        let d = WeylLikeElement::gen_d(w.clone());
        let x = WeylLikeElement::gen_x(w.clone());
        let rel = d.mul(&x).unwrap().sub(&x.mul(&d).unwrap()).unwrap();
        let l = lift_weyl_like(&rel, &RingTag::pdiff_r(), 8).unwrap();
        assert!(l.is_one_within());
    }

    #[test]
    fn lift_quantum_weyl() {
        let mu = rat(2, 1);
        let pres = AlgebraPresentation::quantum_weyl(mu.clone()).unwrap();
        let ring = RingTag::skew_b(mu).unwrap();
        let x = WeylLikeElement::gen_x(pres.clone());
        let d = WeylLikeElement::gen_d(pres.clone());
        // ∂x - μx∂ = 1 must map to 1
        let rel = d
            .mul(&x)
            .unwrap()
            .sub(&x.mul(&d).unwrap().scale(&rat(2, 1)))
            .unwrap();
        let l = lift_weyl_like(&rel, &ring, 8).unwrap();
        assert!(l.is_one_within());
    }
}
