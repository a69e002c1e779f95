//! The catalogue of algebra embeddings into the series rings: the Weyl
//! algebra and the type-A Kleinian deformations into 𝒜, the quantum plane
//! and quantum Weyl algebra into ℬ, and Usl(2) / U_q sl(2) into 𝒞 / ℰ with
//! their Casimir elements. Every defining relation of the source
//! presentation can be verified exactly on the images, truncated at a window.

use std::fmt;

use num::traits::{One, Zero};

use crate::field::poly::Poly1;
use crate::field::rat::{format_rational, is_rational_root_of_unity, Rational};
use crate::field::ratfunc::{RatFunc, VarSet};
use crate::field::FieldError;
use crate::series::{lift_weyl_like, RingTag, SeriesError, TruncatedSeries};
use crate::weyl::{AlgebraPresentation, WeylLikeElement};

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum EmbedError {
    #[error("unknown generator '{0}' for this embedding")]
    UnknownGenerator(char),
    #[error("parameter {0} must not be 0 or ±1")]
    InvalidParameter(Rational),
    #[error("no Casimir element for this embedding")]
    NoCasimir,
    #[error("element does not come from this embedding's source algebra")]
    WrongSourceAlgebra,
    #[error("{0}")]
    Series(#[from] SeriesError),
    #[error("{0}")]
    Field(#[from] FieldError),
}

/// A word in the source generators with integer powers, e.g. Y X or H^-2.
pub type Word = Vec<(char, i64)>;

/// Rational linear combination of words; rich enough for every defining
/// relation here (e.g. \[X,Y\] = 2H or YX = a(H)).
#[derive(Clone, Debug, PartialEq)]
pub struct FormalExpr {
    pub terms: Vec<(Rational, Word)>,
}

impl FormalExpr {
    pub fn word(w: &str) -> Self {
        FormalExpr {
            terms: vec![(Rational::one(), w.chars().map(|g| (g, 1)).collect())],
        }
    }

    pub fn scaled(c: Rational, word: Word) -> Self {
        FormalExpr {
            terms: vec![(c, word)],
        }
    }

    pub fn constant(c: Rational) -> Self {
        FormalExpr {
            terms: vec![(c, Vec::new())],
        }
    }

    pub fn plus(mut self, other: FormalExpr) -> Self {
        self.terms.extend(other.terms);
        self
    }

    pub fn minus(self, other: FormalExpr) -> Self {
        let negated = FormalExpr {
            terms: other.terms.into_iter().map(|(c, w)| (-c, w)).collect(),
        };
        self.plus(negated)
    }

    /// Σ a_k H^k for a univariate polynomial a.
    fn poly_in(p: &Poly1, g: char) -> Self {
        let terms = p
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let w: Word = if k == 0 { Vec::new() } else { vec![(g, k as i64)] };
                (c.clone(), w)
            })
            .collect();
        FormalExpr { terms }
    }
}

impl fmt::Display for FormalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (c, w) in &self.terms {
            let mut factors: Vec<String> = Vec::new();
            if !c.is_one() || w.is_empty() {
                factors.push(format_rational(c));
            }
            for (g, p) in w {
                if *p == 1 {
                    factors.push(g.to_string());
                } else {
                    factors.push(format!("{}^{}", g, p));
                }
            }
            parts.push(factors.join("*"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Which embedding, with its parameters.
#[derive(Clone, Debug, PartialEq)]
pub enum EmbeddingName {
    /// A1 → 𝒜: x → X, ∂ → HX⁻¹.
    A1ToA,
    /// A(a) → 𝒜: X → X, Y → a(H)X⁻¹, H → H (type-A Kleinian deformation).
    KleinianToA(Poly1),
    /// Quantum plane → ℬ_λ: x → X, y → HX⁻¹.
    QPlaneToB(Rational),
    /// Quantum Weyl → ℬ_μ: ∂ → X, x → (μ-1)⁻¹(H-1)X⁻¹.
    QWeylToB(Rational),
    /// Usl(2) → 𝒞: X → X, Y → (C - H(H+1))X⁻¹, H → H.
    Usl2ToC,
    /// U_q sl(2) → ℰ_q: X → X, Y → (C + h⁻¹(H²/(q²-1) - H⁻²/(q⁻²-1)))X⁻¹,
    /// H → H, where h = q - q⁻¹.
    Uqsl2ToE(Rational),
}

#[derive(Clone, Debug)]
pub struct EmbeddingSpec {
    pub name: EmbeddingName,
    ring: RingTag,
}

impl EmbeddingSpec {
    pub fn a1_to_a() -> Self {
        EmbeddingSpec {
            name: EmbeddingName::A1ToA,
            ring: RingTag::skew_a(),
        }
    }

    pub fn kleinian_to_a(a_poly: Poly1) -> Self {
        EmbeddingSpec {
            name: EmbeddingName::KleinianToA(a_poly),
            ring: RingTag::skew_a(),
        }
    }

    pub fn qplane_to_b(lambda: Rational) -> Result<Self, EmbedError> {
        let ring = RingTag::skew_b(lambda.clone())?;
        Ok(EmbeddingSpec {
            name: EmbeddingName::QPlaneToB(lambda),
            ring,
        })
    }

    pub fn qweyl_to_b(mu: Rational) -> Result<Self, EmbedError> {
        let ring = RingTag::skew_b(mu.clone())?;
        Ok(EmbeddingSpec {
            name: EmbeddingName::QWeylToB(mu),
            ring,
        })
    }

    pub fn usl2_to_c() -> Self {
        EmbeddingSpec {
            name: EmbeddingName::Usl2ToC,
            ring: RingTag::skew_c(),
        }
    }

    pub fn uqsl2_to_e(q: Rational) -> Result<Self, EmbedError> {
        if q.is_zero() || is_rational_root_of_unity(&q) {
            return Err(EmbedError::InvalidParameter(q));
        }
        let ring = RingTag::skew_e(q.clone())?;
        Ok(EmbeddingSpec {
            name: EmbeddingName::Uqsl2ToE(q),
            ring,
        })
    }

    pub fn ring(&self) -> &RingTag {
        &self.ring
    }

    pub fn label(&self) -> String {
        match &self.name {
            EmbeddingName::A1ToA => "A1 -> A".into(),
            EmbeddingName::KleinianToA(a) => {
                format!("A(a) -> A with a(H) coefficients {:?}", a.coeffs())
            }
            EmbeddingName::QPlaneToB(l) => format!("quantum plane -> B[{}]", format_rational(l)),
            EmbeddingName::QWeylToB(m) => format!("quantum Weyl -> B[{}]", format_rational(m)),
            EmbeddingName::Usl2ToC => "Usl(2) -> C".into(),
            EmbeddingName::Uqsl2ToE(q) => format!("Uqsl(2) -> E[{}]", format_rational(q)),
        }
    }

    pub fn generators(&self) -> Vec<char> {
        match self.name {
            EmbeddingName::A1ToA | EmbeddingName::QWeylToB(_) => vec!['x', 'd'],
            EmbeddingName::QPlaneToB(_) => vec!['x', 'y'],
            _ => vec!['X', 'Y', 'H'],
        }
    }

    /// Series image of a single source generator.
    pub fn generator_image(&self, g: char, window: u32) -> Result<TruncatedSeries, EmbedError> {
        let ring = self.ring.clone();
        let one = || RatFunc::one(ring.vars());
        let h = || RatFunc::var_h(ring.vars());
        let xgen = || TruncatedSeries::gen(ring.clone(), window);
        let img = match (&self.name, g) {
            (EmbeddingName::A1ToA, 'x') => xgen(),
            (EmbeddingName::A1ToA, 'd') => {
                TruncatedSeries::monomial(ring.clone(), h(), -1, window)
            }
            (EmbeddingName::KleinianToA(a), gg) => match gg {
                'X' => xgen(),
                'H' => TruncatedSeries::scalar(ring.clone(), h(), window),
                'Y' => {
                    let ah = poly1_at_h(a, ring.vars())?;
                    TruncatedSeries::monomial(ring.clone(), ah, -1, window)
                }
                _ => return Err(EmbedError::UnknownGenerator(g)),
            },
            (EmbeddingName::QPlaneToB(_), 'x') => xgen(),
            (EmbeddingName::QPlaneToB(_), 'y') => {
                TruncatedSeries::monomial(ring.clone(), h(), -1, window)
            }
            (EmbeddingName::QWeylToB(_), 'd') => xgen(),
            (EmbeddingName::QWeylToB(mu), 'x') => {
                // (μ-1)⁻¹(H-1)X⁻¹: the unique coefficient that maps the
                // defining relation to exactly 1 (checked by the relation suite).
                let mu_m1 = RatFunc::constant(mu - Rational::one(), ring.vars());
                let c = h().sub(&one())?.div(&mu_m1)?;
                TruncatedSeries::monomial(ring.clone(), c, -1, window)
            }
            (EmbeddingName::Usl2ToC, gg) => match gg {
                'X' => xgen(),
                'H' => TruncatedSeries::scalar(ring.clone(), h(), window),
                'Y' => {
                    // (C - H(H+1)) X⁻¹
                    let c = RatFunc::var_c();
                    let w = c.sub(&h().mul(&h().add(&one())?)?)?;
                    TruncatedSeries::monomial(ring.clone(), w, -1, window)
                }
                _ => return Err(EmbedError::UnknownGenerator(g)),
            },
            (EmbeddingName::Uqsl2ToE(q), gg) => match gg {
                'X' => xgen(),
                'H' => TruncatedSeries::scalar(ring.clone(), h(), window),
                'Y' => {
                    let w = RatFunc::var_c().add(&quantum_h_part(q, self.ring.vars())?)?;
                    TruncatedSeries::monomial(ring.clone(), w, -1, window)
                }
                _ => return Err(EmbedError::UnknownGenerator(g)),
            },
            _ => return Err(EmbedError::UnknownGenerator(g)),
        };
        Ok(img)
    }

    /// Homomorphic image of a formal expression, truncated.
    pub fn embed_expr(
        &self,
        expr: &FormalExpr,
        window: u32,
    ) -> Result<TruncatedSeries, EmbedError> {
        let mut acc = TruncatedSeries::zero(self.ring.clone());
        for (c, word) in &expr.terms {
            let mut prod = TruncatedSeries::one(self.ring.clone(), window);
            for (g, p) in word {
                let img = self.generator_image(*g, window)?;
                prod = prod.mul(&img.pow(*p)?)?;
            }
            acc = acc.add(&prod.scale_rat(c))?;
        }
        Ok(acc)
    }

    /// Image of a normal-form element of A1 / quantum plane / quantum Weyl.
    pub fn embed_weyl(
        &self,
        elem: &WeylLikeElement,
        window: u32,
    ) -> Result<TruncatedSeries, EmbedError> {
        let expected = match (&self.name, elem.presentation()) {
            (EmbeddingName::A1ToA, AlgebraPresentation::Weyl) => true,
            (EmbeddingName::QPlaneToB(l), AlgebraPresentation::QuantumPlane(l2)) => l == l2,
            (EmbeddingName::QWeylToB(m), AlgebraPresentation::QuantumWeyl(m2)) => m == m2,
            _ => false,
        };
        if !expected {
            return Err(EmbedError::WrongSourceAlgebra);
        }
        Ok(lift_weyl_like(elem, &self.ring, window)?)
    }

    /// The defining relations of the source presentation as (lhs, rhs) pairs.
    pub fn relations(&self) -> Vec<(FormalExpr, FormalExpr)> {
        match &self.name {
            EmbeddingName::A1ToA => vec![(
                // ∂x - x∂ = 1
                FormalExpr::word("dx").minus(FormalExpr::word("xd")),
                FormalExpr::constant(Rational::one()),
            )],
            EmbeddingName::KleinianToA(a) => {
                let shifted = compose_shift(a);
                vec![
                    // XH = (H-1)X
                    (
                        FormalExpr::word("XH"),
                        FormalExpr::word("HX").minus(FormalExpr::word("X")),
                    ),
                    // YH = (H+1)Y
                    (
                        FormalExpr::word("YH"),
                        FormalExpr::word("HY").plus(FormalExpr::word("Y")),
                    ),
                    // YX = a(H)
                    (FormalExpr::word("YX"), FormalExpr::poly_in(a, 'H')),
                    // XY = a(H-1)
                    (FormalExpr::word("XY"), FormalExpr::poly_in(&shifted, 'H')),
                ]
            }
            EmbeddingName::QPlaneToB(l) => vec![(
                // xy = λ yx
                FormalExpr::word("xy"),
                FormalExpr::scaled(l.clone(), vec![('y', 1), ('x', 1)]),
            )],
            EmbeddingName::QWeylToB(m) => vec![(
                // ∂x - μx∂ = 1
                FormalExpr::word("dx")
                    .minus(FormalExpr::scaled(m.clone(), vec![('x', 1), ('d', 1)])),
                FormalExpr::constant(Rational::one()),
            )],
            EmbeddingName::Usl2ToC => vec![
                // [H,X] = X
                (
                    FormalExpr::word("HX").minus(FormalExpr::word("XH")),
                    FormalExpr::word("X"),
                ),
                // [H,Y] = -Y
                (
                    FormalExpr::word("HY").minus(FormalExpr::word("YH")),
                    FormalExpr::scaled(-Rational::one(), vec![('Y', 1)]),
                ),
                // [X,Y] = 2H
                (
                    FormalExpr::word("XY").minus(FormalExpr::word("YX")),
                    FormalExpr::scaled(Rational::from_integer(2.into()), vec![('H', 1)]),
                ),
            ],
            EmbeddingName::Uqsl2ToE(q) => {
                let hinv = q_h_inverse(q);
                vec![
                    // XH = qHX
                    (
                        FormalExpr::word("XH"),
                        FormalExpr::scaled(q.clone(), vec![('H', 1), ('X', 1)]),
                    ),
                    // YH = q⁻¹HY
                    (
                        FormalExpr::word("YH"),
                        FormalExpr::scaled(q.recip(), vec![('H', 1), ('Y', 1)]),
                    ),
                    // [X,Y] = h⁻¹(H² - H⁻²)
                    (
                        FormalExpr::word("XY").minus(FormalExpr::word("YX")),
                        FormalExpr::scaled(hinv.clone(), vec![('H', 2)]).minus(
                            FormalExpr::scaled(hinv, vec![('H', -2)]),
                        ),
                    ),
                ]
            }
        }
    }

    /// All defining relations map to exact identities within the window.
    pub fn verify_relations(&self, window: u32) -> Result<bool, EmbedError> {
        for (lhs, rhs) in self.relations() {
            let li = self.embed_expr(&lhs, window)?;
            let ri = self.embed_expr(&rhs, window)?;
            if !li.eq_within(&ri) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// a(H) as a rational function.
fn poly1_at_h(p: &Poly1, vars: VarSet) -> Result<RatFunc, EmbedError> {
    let h = RatFunc::var_h(vars);
    let mut acc = RatFunc::zero(vars);
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(&h)?.add(&RatFunc::constant(c.clone(), vars))?;
    }
    Ok(acc)
}

/// a(t-1) by Horner composition.
fn compose_shift(p: &Poly1) -> Poly1 {
    let tm1 = Poly1::from_coeffs(vec![-Rational::one(), Rational::one()]);
    let mut acc = Poly1::zero();
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(&tm1).add(&Poly1::constant(c.clone()));
    }
    acc
}

/// h⁻¹ = (q - q⁻¹)⁻¹.
fn q_h_inverse(q: &Rational) -> Rational {
    (q - q.clone().recip()).recip()
}

/// h⁻¹(H²/(q²-1) - H⁻²/(q⁻²-1)) as a rational function of H.
///
/// The defining relation [X,Y] = h⁻¹(H² - H⁻²) forces this coefficient of
/// h⁻¹ (the commutator picks up exactly τ(W) - W); the verification is the
/// relation suite itself.
fn quantum_h_part(q: &Rational, vars: VarSet) -> Result<RatFunc, EmbedError> {
    let hinv = q_h_inverse(q);
    let h = RatFunc::var_h(vars);
    let q2m1 = RatFunc::constant(q * q - Rational::one(), vars);
    let qm2m1 = RatFunc::constant(q.recip() * q.recip() - Rational::one(), vars);
    let h2 = h.pow(2)?;
    let hm2 = h.pow(-2)?;
    let part = h2.div(&q2m1)?.sub(&hm2.div(&qm2m1)?)?;
    Ok(part.scale(&hinv))
}

// ---------------------------------------------------------------------------
// Casimir elements
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct CasimirElement {
    pub expression: FormalExpr,
    pub image: TruncatedSeries,
}

/// The Casimir element of Usl(2) (YX + H(H+1)) or of U_q sl(2); its image
/// simplifies to exactly the central coefficient C at exponent 0.
pub fn casimir(spec: &EmbeddingSpec, window: u32) -> Result<CasimirElement, EmbedError> {
    let expression = match &spec.name {
        EmbeddingName::Usl2ToC => FormalExpr::word("YX")
            .plus(FormalExpr::scaled(Rational::one(), vec![('H', 2)]))
            .plus(FormalExpr::word("H")),
        EmbeddingName::Uqsl2ToE(q) => {
            let hinv = q_h_inverse(q);
            let c1 = -&hinv / (q * q - Rational::one());
            let c2 = hinv.clone() / (q.recip() * q.recip() - Rational::one());
            FormalExpr::word("YX")
                .plus(FormalExpr::scaled(c1, vec![('H', 2)]))
                .plus(FormalExpr::scaled(c2, vec![('H', -2)]))
        }
        _ => return Err(EmbedError::NoCasimir),
    };
    let image = spec.embed_expr(&expression, window)?;
    Ok(CasimirElement { expression, image })
}
