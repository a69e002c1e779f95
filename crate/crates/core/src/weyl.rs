//! Normal-form arithmetic for the three presented algebras on the monomial
//! basis x^i ∂^j (x^i y^j for the quantum plane): the Weyl algebra A1 with
//! ∂x = x∂ + 1, the quantum plane with xy = λyx, and the quantum Weyl
//! algebra with ∂x = μx∂ + 1. Also the Bernstein degree and leading-form
//! calculus used by the classification machinery.

use std::collections::BTreeMap;
use std::fmt;

use num::traits::{One, Zero};

use crate::degree::Degree;
use crate::field::poly::{Poly1, Poly2};
use crate::field::rat::{factorial, is_rational_root_of_unity, rat_pow, Rational};
use num::bigint::BigInt;

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum WeylError {
    #[error("elements live in different presentations")]
    MixedPresentations,
    #[error("operation requires a nonzero element")]
    ZeroElement,
    #[error("operation defined only for the Weyl presentation")]
    NotWeyl,
    #[error("quantum parameter {0} must not be 0 or ±1")]
    InvalidQuantumParameter(Rational),
}

/// Which presented algebra an element lives in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraPresentation {
    /// A1: ∂x - x∂ = 1.
    Weyl,
    /// Quantum plane: xy = λyx, normal form x^i y^j.
    QuantumPlane(Rational),
    /// Quantum Weyl: ∂x - μx∂ = 1.
    QuantumWeyl(Rational),
}

impl AlgebraPresentation {
    pub fn quantum_plane(lambda: Rational) -> Result<Self, WeylError> {
        check_quantum_param(&lambda)?;
        Ok(AlgebraPresentation::QuantumPlane(lambda))
    }

    pub fn quantum_weyl(mu: Rational) -> Result<Self, WeylError> {
        check_quantum_param(&mu)?;
        Ok(AlgebraPresentation::QuantumWeyl(mu))
    }

    /// ASCII names of the two generators in normal-form order.
    pub fn generator_names(&self) -> (&'static str, &'static str) {
        match self {
            AlgebraPresentation::QuantumPlane(_) => ("x", "y"),
            _ => ("x", "d"),
        }
    }
}

fn check_quantum_param(q: &Rational) -> Result<(), WeylError> {
    if q.is_zero() || is_rational_root_of_unity(q) {
        Err(WeylError::InvalidQuantumParameter(q.clone()))
    } else {
        Ok(())
    }
}

/// Element in normal form: a finite map (i, j) ↦ coefficient of x^i ∂^j.
/// No stored coefficient is zero; the zero element is the empty map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylLikeElement {
    presentation: AlgebraPresentation,
    coeffs: BTreeMap<(u32, u32), Rational>,
}

impl WeylLikeElement {
    pub fn zero(presentation: AlgebraPresentation) -> Self {
        WeylLikeElement {
            presentation,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn monomial(presentation: AlgebraPresentation, c: Rational, i: u32, j: u32) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert((i, j), c);
        }
        WeylLikeElement {
            presentation,
            coeffs,
        }
    }

    pub fn one(presentation: AlgebraPresentation) -> Self {
        Self::monomial(presentation, Rational::one(), 0, 0)
    }

    pub fn scalar(presentation: AlgebraPresentation, c: Rational) -> Self {
        Self::monomial(presentation, c, 0, 0)
    }

    /// The generator x.
    pub fn gen_x(presentation: AlgebraPresentation) -> Self {
        Self::monomial(presentation, Rational::one(), 1, 0)
    }

    /// The second generator: ∂ for A1 / quantum Weyl, y for the quantum plane.
    pub fn gen_d(presentation: AlgebraPresentation) -> Self {
        Self::monomial(presentation, Rational::one(), 0, 1)
    }

    pub fn presentation(&self) -> &AlgebraPresentation {
        &self.presentation
    }

    pub fn coeffs(&self) -> &BTreeMap<(u32, u32), Rational> {
        &self.coeffs
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.coeffs
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True for elements of K·1, the centre of all three algebras.
    pub fn is_scalar(&self) -> bool {
        self.coeffs.keys().all(|k| *k == (0, 0))
    }

    pub fn as_scalar(&self) -> Option<Rational> {
        if self.coeffs.is_empty() {
            Some(Rational::zero())
        } else if self.is_scalar() {
            self.coeffs.get(&(0, 0)).cloned()
        } else {
            None
        }
    }

    fn insert_add(&mut self, key: (u32, u32), c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.coeffs.entry(key) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_same(&self, other: &WeylLikeElement) -> Result<(), WeylError> {
        if self.presentation != other.presentation {
            return Err(WeylError::MixedPresentations);
        }
        Ok(())
    }

    pub fn add(&self, other: &WeylLikeElement) -> Result<WeylLikeElement, WeylError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (k, c) in &other.coeffs {
            out.insert_add(*k, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &WeylLikeElement) -> Result<WeylLikeElement, WeylError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> WeylLikeElement {
        WeylLikeElement {
            presentation: self.presentation.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, c)| (*k, -c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> WeylLikeElement {
        if c.is_zero() {
            return WeylLikeElement::zero(self.presentation.clone());
        }
        WeylLikeElement {
            presentation: self.presentation.clone(),
            coeffs: self.coeffs.iter().map(|(k, a)| (*k, a * c)).collect(),
        }
    }

    /// Normal-form product.
    pub fn mul(&self, other: &WeylLikeElement) -> Result<WeylLikeElement, WeylError> {
        self.check_same(other)?;
        let mut out = WeylLikeElement::zero(self.presentation.clone());
        for ((a, b), ca) in &self.coeffs {
            for ((c, d), cb) in &other.coeffs {
                // x^a ∂^b · x^c ∂^d = x^a (∂^b x^c) ∂^d
                let mid = reorder(&self.presentation, *b, *c);
                for ((mi, mj), cm) in &mid.coeffs {
                    out.insert_add((a + mi, mj + d), ca * cb * cm);
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Result<WeylLikeElement, WeylError> {
        let mut acc = WeylLikeElement::one(self.presentation.clone());
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// [self, other] = self·other - other·self.
    pub fn commutator(&self, other: &WeylLikeElement) -> Result<WeylLikeElement, WeylError> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// (ad self)^k applied to b; k = 0 returns b.
    pub fn ad_power(&self, b: &WeylLikeElement, k: u32) -> Result<WeylLikeElement, WeylError> {
        let mut acc = b.clone();
        for _ in 0..k {
            acc = self.commutator(&acc)?;
        }
        Ok(acc)
    }

    /// Bernstein degree max(i+j); -∞ for zero.
    pub fn bernstein_degree(&self) -> Degree {
        self.coeffs
            .keys()
            .map(|(i, j)| (i + j) as i64)
            .max()
            .map_or(Degree::NegInf, Degree::Finite)
    }

    /// Leading form in the associated graded polynomial ring K[x̄, ∂̄]
    /// (Weyl presentation only). Errors on zero.
    pub fn leading_form(&self) -> Result<Poly2, WeylError> {
        if self.presentation != AlgebraPresentation::Weyl {
            return Err(WeylError::NotWeyl);
        }
        let d = self
            .bernstein_degree()
            .finite()
            .ok_or(WeylError::ZeroElement)? as u32;
        let mut out = Poly2::zero();
        for ((i, j), c) in &self.coeffs {
            if i + j == d {
                out = out.add(&Poly2::monomial(c.clone(), (*i, *j)));
            }
        }
        Ok(out)
    }

    /// Σ f_k self^k.
    pub fn eval_poly(&self, f: &Poly1) -> Result<WeylLikeElement, WeylError> {
        // Horner over the noncommutative algebra; powers of self commute.
        let mut acc = WeylLikeElement::zero(self.presentation.clone());
        for c in f.coeffs().iter().rev() {
            acc = acc.mul(self)?;
            acc.insert_add((0, 0), c.clone());
        }
        Ok(acc)
    }
}

/// Normal form of ∂^m x^n in the given presentation.
///
/// Weyl: the closed form ∂^m x^n = Σ_k C(m,k) C(n,k) k! x^(n-k) ∂^(m-k),
/// validated against the single-relation rewriting oracle in tests.
/// Quantum Weyl: recursion through ∂ x^c = μ^c x^c ∂ + [c]_μ x^(c-1).
/// Quantum plane: y^m x^n = λ^(-mn) x^n y^m.
fn reorder(pres: &AlgebraPresentation, m: u32, n: u32) -> WeylLikeElement {
    match pres {
        AlgebraPresentation::Weyl => {
            let mut out = WeylLikeElement::zero(pres.clone());
            for k in 0..=m.min(n) {
                let c = Rational::from_integer(
                    crate::field::rat::binomial(m as i64, k)
                        * crate::field::rat::binomial(n as i64, k)
                        * factorial(k),
                );
                out.insert_add((n - k, m - k), c);
            }
            out
        }
        AlgebraPresentation::QuantumPlane(lambda) => WeylLikeElement::monomial(
            pres.clone(),
            rat_pow(lambda, -((m as i64) * (n as i64))),
            n,
            m,
        ),
        AlgebraPresentation::QuantumWeyl(mu) => {
            // ∂^m x^n = μ^n (∂^(m-1) x^n) ∂ + [n]_μ (∂^(m-1) x^(n-1))
            let mut acc = WeylLikeElement::monomial(pres.clone(), Rational::one(), n, 0);
            for _ in 0..m {
                let mut next = WeylLikeElement::zero(pres.clone());
                for ((i, j), c) in &acc.coeffs {
                    // ∂ x^i ∂^j = μ^i x^i ∂^(j+1) + [i]_μ x^(i-1) ∂^j
                    next.insert_add((*i, j + 1), c * rat_pow(mu, *i as i64));
                    if *i > 0 {
                        next.insert_add((i - 1, *j), c * q_integer(mu, *i));
                    }
                }
                acc = next;
            }
            acc
        }
    }
}

/// [n]_μ = 1 + μ + ... + μ^(n-1).
fn q_integer(mu: &Rational, n: u32) -> Rational {
    let mut acc = Rational::zero();
    let mut pw = Rational::one();
    for _ in 0..n {
        acc += pw.clone();
        pw *= mu;
    }
    acc
}

impl fmt::Display for WeylLikeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use crate::field::rat::format_rational;
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let (xn, dn) = self.presentation.generator_names();
        // Highest Bernstein degree first, then lexicographic.
        let mut keys: Vec<&(u32, u32)> = self.coeffs.keys().collect();
        keys.sort_by_key(|k| (std::cmp::Reverse(k.0 + k.1), std::cmp::Reverse(k.0)));
        let mut s = String::new();
        for (idx, key) in keys.iter().enumerate() {
            let c = &self.coeffs[key];
            let neg = c < &Rational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if idx == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mut factors = Vec::new();
            if !mag.is_one() || **key == (0, 0) {
                factors.push(format_rational(&mag));
            }
            for (name, pw) in [(xn, key.0), (dn, key.1)] {
                if pw == 1 {
                    factors.push(name.to_string());
                } else if pw > 1 {
                    factors.push(format!("{}^{}", name, pw));
                }
            }
            s.push_str(&factors.join("*"));
        }
        write!(f, "{}", s)
    }
}

/// Dimension of the degree-≤ N slice of the monomial basis.
pub fn bounded_dim(n: u32) -> usize {
    ((n + 1) * (n + 2) / 2) as usize
}

/// Monomials (i, j) with i + j <= n, in a fixed deterministic order.
pub fn bounded_monomials(n: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::with_capacity(bounded_dim(n));
    for total in 0..=n {
        for i in (0..=total).rev() {
            out.push((i, total - i));
        }
    }
    out
}

/// Scalar multiple of 1/k! as a rational.
pub fn inverse_factorial(k: u32) -> Rational {
    Rational::new(BigInt::one(), factorial(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat::{rat, rat_int};

    fn w() -> AlgebraPresentation {
        AlgebraPresentation::Weyl
    }

    fn x() -> WeylLikeElement {
        WeylLikeElement::gen_x(w())
    }

    fn d() -> WeylLikeElement {
        WeylLikeElement::gen_d(w())
    }

    /// Rewriting oracle: normal-order a word of generators by applying the
    /// single relation ∂x → μx∂ + 1 (μ = 1 for Weyl) to fixpoint.
    fn rewrite_word(pres: &AlgebraPresentation, word: &[u8]) -> WeylLikeElement {
        // Terms are (coefficient, word over {b'x', b'd'}).
        let mut terms: Vec<(Rational, Vec<u8>)> = vec![(Rational::one(), word.to_vec())];
        let mut out = WeylLikeElement::zero(pres.clone());
        while let Some((c, word)) = terms.pop() {
            // find first "dx" (or "yx" for the plane)
            let pos = word.windows(2).position(|p| p == [b'd', b'x']);
            match pos {
                None => {
                    let i = word.iter().filter(|&&g| g == b'x').count() as u32;
                    let j = word.len() as u32 - i;
                    out.insert_add((i, j), c);
                }
                Some(p) => match pres {
                    AlgebraPresentation::Weyl => {
                        let mut swapped = word.clone();
                        swapped.swap(p, p + 1);
                        let mut dropped = word.clone();
                        dropped.drain(p..p + 2);
                        terms.push((c.clone(), swapped));
                        terms.push((c, dropped));
                    }
                    AlgebraPresentation::QuantumWeyl(mu) => {
                        let mut swapped = word.clone();
                        swapped.swap(p, p + 1);
                        let mut dropped = word.clone();
                        dropped.drain(p..p + 2);
                        terms.push((c.clone() * mu, swapped));
                        terms.push((c, dropped));
                    }
                    AlgebraPresentation::QuantumPlane(lambda) => {
                        // here "d" plays y and yx = λ^{-1} x y
                        let mut swapped = word.clone();
                        swapped.swap(p, p + 1);
                        terms.push((c * lambda.recip(), swapped));
                    }
                },
            }
        }
        out
    }

    fn monomial_word(i: u32, j: u32) -> Vec<u8> {
        let mut w = vec![b'x'; i as usize];
        w.extend(std::iter::repeat(b'd').take(j as usize));
        w
    }

    #[test]
    fn defining_relation() {
        // ∂·x = x∂ + 1
        let p = d().mul(&x()).unwrap();
        let mut expect = WeylLikeElement::monomial(w(), rat_int(1), 1, 1);
        expect.insert_add((0, 0), rat_int(1));
        assert_eq!(p, expect);
        // x·∂ is already normal
        assert_eq!(
            x().mul(&d()).unwrap(),
            WeylLikeElement::monomial(w(), rat_int(1), 1, 1)
        );
    }

    #[test]
    fn square_reordering_against_oracle() {
        // ∂²·x² = x²∂² + 4x∂ + 2
        let p = d().pow(2).unwrap().mul(&x().pow(2).unwrap()).unwrap();
        assert_eq!(p.coeff(2, 2), rat_int(1));
        assert_eq!(p.coeff(1, 1), rat_int(4));
        assert_eq!(p.coeff(0, 0), rat_int(2));
        let mut word = monomial_word(0, 2);
        word.extend(monomial_word(2, 0));
        assert_eq!(p, rewrite_word(&w(), &word));
    }

    #[test]
    fn closed_form_matches_oracle_up_to_six() {
        for m in 0..=6u32 {
            for n in 0..=6u32 {
                let p = d().pow(m).unwrap().mul(&x().pow(n).unwrap()).unwrap();
                let mut word = monomial_word(0, m);
                word.extend(monomial_word(n, 0));
                assert_eq!(p, rewrite_word(&w(), &word), "∂^{m} x^{n}");
            }
        }
    }

    #[test]
    fn quantum_weyl_relation() {
        let pres = AlgebraPresentation::quantum_weyl(rat_int(2)).unwrap();
        let xq = WeylLikeElement::gen_x(pres.clone());
        let dq = WeylLikeElement::gen_d(pres.clone());
        // ∂·x = μx∂ + 1
        let p = dq.mul(&xq).unwrap();
        assert_eq!(p.coeff(1, 1), rat_int(2));
        assert_eq!(p.coeff(0, 0), rat_int(1));
        // oracle agreement on ∂^m x^n for m,n ≤ 4
        for m in 0..=4u32 {
            for n in 0..=4u32 {
                let p = dq.pow(m).unwrap().mul(&xq.pow(n).unwrap()).unwrap();
                let mut word = monomial_word(0, m);
                word.extend(monomial_word(n, 0));
                assert_eq!(p, rewrite_word(&pres, &word), "q: ∂^{m} x^{n}");
            }
        }
    }

    #[test]
    fn quantum_plane_reordering() {
        let pres = AlgebraPresentation::quantum_plane(rat(3, 2)).unwrap();
        let xq = WeylLikeElement::gen_x(pres.clone());
        let yq = WeylLikeElement::gen_d(pres.clone());
        // y·x = λ^{-1} x y
        let p = yq.mul(&xq).unwrap();
        assert_eq!(p.coeff(1, 1), rat(2, 3));
        // xy = λ yx as a relation check
        let lhs = xq.mul(&yq).unwrap();
        let rhs = yq.mul(&xq).unwrap().scale(&rat(3, 2));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn commutators() {
        // [∂, x] = 1
        assert_eq!(d().commutator(&x()).unwrap(), WeylLikeElement::one(w()));
        // [a, a] = 0
        let a = x().mul(&d()).unwrap();
        assert!(a.commutator(&a).unwrap().is_zero());
        // [x∂, x] = x
        let h = x().mul(&d()).unwrap();
        assert_eq!(h.commutator(&x()).unwrap(), x());
    }

    #[test]
    fn ad_powers() {
        // (ad x)^2 ∂ = [x, [x, ∂]] = [x, -1] = 0
        assert!(x().ad_power(&d(), 2).unwrap().is_zero());
        // ad(x+∂) is locally nilpotent: (ad (x+∂))^4 (x²∂) = 0
        let a = x().add(&d()).unwrap();
        let b = x().pow(2).unwrap().mul(&d()).unwrap();
        assert!(a.ad_power(&b, 4).unwrap().is_zero());
        assert!(!a.ad_power(&b, 3).unwrap().is_zero());
        // (ad x∂)(x) = x
        let h = x().mul(&d()).unwrap();
        assert_eq!(h.ad_power(&x(), 1).unwrap(), x());
        // k = 0 returns the input
        assert_eq!(h.ad_power(&x(), 0).unwrap(), x());
    }

    #[test]
    fn bernstein_degree_and_leading_form() {
        let a = x().pow(2).unwrap().mul(&d()).unwrap();
        assert_eq!(a.bernstein_degree(), Degree::Finite(3));
        assert_eq!(
            WeylLikeElement::zero(w()).bernstein_degree(),
            Degree::NegInf
        );
        // ∂x = x∂ + 1 has degree 2
        assert_eq!(d().mul(&x()).unwrap().bernstein_degree(), Degree::Finite(2));
        // leading_form(x∂ + 1) = x̄∂̄
        let h1 = d().mul(&x()).unwrap();
        assert_eq!(
            h1.leading_form().unwrap(),
            Poly2::monomial(rat_int(1), (1, 1))
        );
        // leading_form(x + ∂) = x̄ + ∂̄
        let s = x().add(&d()).unwrap();
        assert_eq!(
            s.leading_form().unwrap(),
            Poly2::monomial(rat_int(1), (1, 0)).add(&Poly2::monomial(rat_int(1), (0, 1)))
        );
        assert!(WeylLikeElement::zero(w()).leading_form().is_err());
    }

    #[test]
    fn eval_poly_basics() {
        let h = x().mul(&d()).unwrap();
        // t² at x∂ → x²∂² + x∂
        let f = Poly1::monomial(rat_int(1), 2);
        let p = h.eval_poly(&f).unwrap();
        assert_eq!(p.coeff(2, 2), rat_int(1));
        assert_eq!(p.coeff(1, 1), rat_int(1));
        assert_eq!(p.coeffs().len(), 2);
        // identity and constant polynomials
        assert_eq!(h.eval_poly(&Poly1::monomial(rat_int(1), 1)).unwrap(), h);
        assert_eq!(
            h.eval_poly(&Poly1::one()).unwrap(),
            WeylLikeElement::one(w())
        );
        // f(a) commutes with a
        let f = Poly1::from_coeffs(vec![rat_int(2), rat_int(0), rat_int(1), rat_int(3)]);
        let fa = h.eval_poly(&f).unwrap();
        assert!(fa.commutator(&h).unwrap().is_zero());
    }

    #[test]
    fn mixed_presentation_is_an_error() {
        let pres = AlgebraPresentation::quantum_weyl(rat_int(2)).unwrap();
        let xq = WeylLikeElement::gen_x(pres);
        assert!(matches!(
            x().mul(&xq),
            Err(WeylError::MixedPresentations)
        ));
    }

    #[test]
    fn degree_additivity_weyl() {
        let a = x().pow(2).unwrap().add(&d()).unwrap();
        let b = d().pow(3).unwrap().sub(&x()).unwrap();
        let ab = a.mul(&b).unwrap();
        assert_eq!(
            ab.bernstein_degree(),
            a.bernstein_degree().plus(b.bernstein_degree())
        );
    }

    #[test]
    fn bounded_basis_enumeration() {
        assert_eq!(bounded_dim(6), 28);
        let ms = bounded_monomials(2);
        assert_eq!(ms.len(), 6);
        assert_eq!(ms[0], (0, 0));
        assert!(ms.contains(&(1, 1)));
    }
}
