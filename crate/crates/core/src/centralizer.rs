//! Constructive centralizer computation in the series rings: the triangular
//! degree-0 solve (unique once the constant term is chosen), the
//! leading-term-matching search for elements of prescribed degree, centre
//! probes, eigenspace factorization D(a,λ) = C(a)p = pC(a), and the
//! commutative-centralizer checks for element pairs.
//!
//! Searches with rational-function unknowns are run over a polynomial ansatz
//! of bounded degree so every solve is exact Q-linear algebra; reports say
//! which ansatz was used.

use std::fmt;

use num::traits::Zero;

use crate::classify::{self, ClassifyError};
use crate::field::poly::Poly2;
use crate::field::rat::Rational;
use crate::field::ratfunc::{RatFunc, VarSet};
use crate::field::FieldError;
use crate::linalg::{self, Matrix};
use crate::series::{RingKind, RingTag, SeriesError, TruncatedSeries};
use crate::weyl::WeylLikeElement;

use thiserror::Error;

pub const DEFAULT_ANSATZ_DEGREE: u32 = 6;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum CentralizerError {
    #[error(
        "leading coefficient is fixed by the twist; the degree-0 solve needs σ(u0) ≠ u0 \
         (the case u = c + lower-order terms with c in the fixed field is not covered \
         by the centralizer trichotomy and is refused)"
    )]
    LeadingFixedByTwist,
    #[error("u lies in the coefficient field; its centralizer is the whole field (case (1))")]
    CoefficientFieldElement,
    #[error("series has the wrong degree for this solver: {0}")]
    WrongDegree(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("{0}")]
    Series(#[from] SeriesError),
    #[error("{0}")]
    Field(#[from] FieldError),
    #[error("{0}")]
    Classify(#[from] ClassifyError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Construction {
    TriangularSolve,
    LeadingTermMatch,
    Given,
}

#[derive(Clone, Debug)]
pub struct CentralizerWitness {
    pub element: TruncatedSeries,
    pub commutes_to_window: bool,
    pub construction: Construction,
}

// ---------------------------------------------------------------------------
// Ansatz machinery: polynomial-coefficient unknowns make the solves Q-linear
// ---------------------------------------------------------------------------

/// Monomial basis of the polynomial ansatz inside the coefficient field:
/// H^a (a ≤ d), H^a C^b (a + b ≤ d), or x^a (a ≤ d).
pub fn ansatz_monomials(vars: VarSet, d: u32) -> Vec<RatFunc> {
    let mut out = Vec::new();
    match vars {
        VarSet::K => out.push(RatFunc::one(VarSet::K)),
        VarSet::H | VarSet::X => {
            for a in 0..=d {
                out.push(RatFunc::from_poly(
                    Poly2::monomial(Rational::from_integer(1.into()), (a, 0)),
                    vars,
                ));
            }
        }
        VarSet::HC => {
            for total in 0..=d {
                for a in (0..=total).rev() {
                    out.push(RatFunc::from_poly(
                        Poly2::monomial(Rational::from_integer(1.into()), (a, total - a)),
                        vars,
                    ));
                }
            }
        }
    }
    out
}

fn poly_lcm(a: &Poly2, b: &Poly2) -> Poly2 {
    let g = a.gcd(b);
    a.mul(&b.divide(&g).expect("gcd divides"))
}

/// Q-linear rows of the system Σ_m c_m (S_m)_e = (rhs)_e over every exponent
/// in the common guaranteed window (or just `restrict`), clearing
/// denominators per exponent and expanding numerators over their monomials.
fn linear_rows(
    contribs: &[TruncatedSeries],
    rhs: Option<&TruncatedSeries>,
    restrict: Option<i64>,
) -> Result<(Vec<Vec<Rational>>, Vec<Rational>), CentralizerError> {
    let mut common: Option<i64> = None;
    let mut exps: std::collections::BTreeSet<i64> = Default::default();
    for s in contribs.iter().chain(rhs) {
        if let Some(f) = s.floor() {
            common = Some(common.map_or(f, |c: i64| c.max(f)));
        }
        exps.extend(s.terms().map(|(e, _)| *e));
    }
    let common = match common {
        Some(c) => c,
        None => return Ok((Vec::new(), Vec::new())), // everything exactly zero
    };
    let mut rows = Vec::new();
    let mut rhs_col = Vec::new();
    for e in exps.into_iter().filter(|e| *e >= common) {
        if restrict.is_some_and(|r| r != e) {
            continue;
        }
        let cs: Vec<RatFunc> = contribs
            .iter()
            .map(|s| s.coeff(e).expect("above common floor"))
            .collect();
        let rc = rhs
            .map(|s| s.coeff(e).expect("above common floor"))
            .unwrap_or_else(|| RatFunc::zero(VarSet::K));
        let mut den = Poly2::one();
        for c in cs.iter().chain(std::iter::once(&rc)) {
            den = poly_lcm(&den, c.den());
        }
        let denf = RatFunc::from_poly(den, cs.first().map(|c| c.vars()).unwrap_or(rc.vars()));
        let polys: Vec<Poly2> = cs
            .iter()
            .map(|c| {
                let p = c.mul(&denf).expect("same field");
                debug_assert!(p.is_polynomial());
                p.num().clone()
            })
            .collect();
        let rp = {
            let p = rc.mul(&denf)?;
            debug_assert!(p.is_polynomial());
            p.num().clone()
        };
        let mut monos: std::collections::BTreeSet<(u32, u32)> = Default::default();
        for p in polys.iter().chain(std::iter::once(&rp)) {
            monos.extend(p.terms().map(|(m, _)| *m));
        }
        for m in monos {
            rows.push(polys.iter().map(|p| p.coeff(m)).collect());
            rhs_col.push(rp.coeff(m));
        }
    }
    Ok((rows, rhs_col))
}

/// Reconstruct Σ c_m basis_m from ansatz coordinates.
fn combine(basis: &[RatFunc], coords: &[Rational]) -> RatFunc {
    let vars = basis.first().map(|b| b.vars()).unwrap_or(VarSet::K);
    let mut acc = RatFunc::zero(vars);
    for (b, c) in basis.iter().zip(coords) {
        if !c.is_zero() {
            acc = acc.add(&b.scale(c)).expect("same field");
        }
    }
    acc
}

// ---------------------------------------------------------------------------
// The degree-0 triangular solve (case (2) of the trichotomy)
// ---------------------------------------------------------------------------

/// Unique centralizer element of u with prescribed constant term a0.
///
/// Requires deg u = 0 with the leading coefficient moved by the twist and at
/// least one lower-order term. Coefficients are solved from the triangular
/// system (σ^s(u0) - u0)·c_s + known = 0 (skew Laurent) resp.
/// s·δ(u0)·c_s + known = 0 (pseudo-differential), top-down.
pub fn centralize_deg0(
    u: &TruncatedSeries,
    a0: &RatFunc,
    window: u32,
) -> Result<CentralizerWitness, CentralizerError> {
    let (u0, top) = u
        .leading()
        .map_err(|_| CentralizerError::WrongDegree("zero or unknown leading term".into()))?;
    if top != 0 {
        return Err(CentralizerError::WrongDegree(format!(
            "degree-0 solve needs deg u = 0, found {}",
            top
        )));
    }
    if !u.terms().any(|(e, _)| *e < 0) {
        return Err(CentralizerError::CoefficientFieldElement);
    }
    if u.ring().twist().is_fixed(&u0)? {
        return Err(CentralizerError::LeadingFixedByTwist);
    }
    let wu = u.window_len().expect("nonzero series") as u32;
    let depth = wu.min(window).max(1);
    let kind = u.ring().kind();
    // Slots whose defining equation lies inside the residual window: the
    // pseudo-differential equation for slot s sits one exponent lower.
    let solved_depth = match kind {
        RingKind::SkewLaurent => depth,
        RingKind::PseudoDiff => depth.saturating_sub(1).max(1),
    };
    let mut c = TruncatedSeries::from_terms(u.ring().clone(), [(0, a0.clone())], depth);
    if a0.is_zero() {
        // the unique solution with zero constant term is zero
        return Ok(CentralizerWitness {
            element: TruncatedSeries::from_terms(u.ring().clone(), [], solved_depth),
            commutes_to_window: true,
            construction: Construction::TriangularSolve,
        });
    }
    loop {
        let r = c.commutator(u)?;
        let Some(e) = r.top() else {
            break;
        };
        let rho = r.coeff(e).expect("leading is known");
        let (slot, gamma) = match kind {
            RingKind::SkewLaurent => {
                // adding γX^s changes the residual at s by (σ^s(u0) - u0)γ
                let factor = u.ring().twist().apply(&u0, e)?.sub(&u0)?;
                (e, rho.neg().div(&factor)?)
            }
            RingKind::PseudoDiff => {
                // adding γt^s changes the residual at s-1 by s·δ(u0)·γ
                let s = e + 1;
                let factor = u
                    .ring()
                    .twist()
                    .apply(&u0, 1)?
                    .scale(&Rational::from_integer(s.into()));
                (s, rho.neg().div(&factor)?)
            }
        };
        debug_assert!(slot < 0, "corrections never touch the prescribed a0");
        let corr = TruncatedSeries::monomial(u.ring().clone(), gamma, slot, depth);
        c = c.add(&corr)?;
    }
    let element = TruncatedSeries::from_terms(
        u.ring().clone(),
        c.terms().map(|(e, v)| (*e, v.clone())),
        solved_depth,
    );
    let commutes = element.commutator(u)?.is_zero_within_window();
    Ok(CentralizerWitness {
        element,
        commutes_to_window: commutes,
        construction: Construction::TriangularSolve,
    })
}

// ---------------------------------------------------------------------------
// Prescribed-degree search (case (3))
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub enum PosdegOutcome {
    Found(CentralizerWitness),
    /// No solution at this order within the ansatz; carries the order and the
    /// residual that could not be matched.
    Obstructed {
        order: i64,
        residual: String,
    },
}

/// Search for an element of prescribed degree commuting with u (deg u ≠ 0),
/// solved order by order with polynomial-ansatz coefficients. The witness is
/// normalized: the leading coefficient's constant part is scaled to 1 when
/// possible (first nonzero ansatz coordinate otherwise) and every free slot
/// of the linear system is zeroed.
pub fn centralize_posdeg(
    u: &TruncatedSeries,
    target_deg: i64,
    window: u32,
    ansatz_deg: u32,
) -> Result<PosdegOutcome, CentralizerError> {
    let (_, n) = u
        .leading()
        .map_err(|_| CentralizerError::WrongDegree("zero or unknown leading term".into()))?;
    if n == 0 {
        return Err(CentralizerError::WrongDegree(
            "prescribed-degree search needs deg u ≠ 0; use the degree-0 solve".into(),
        ));
    }
    let ring = u.ring().clone();
    let basis = ansatz_monomials(ring.vars(), ansatz_deg);
    let wu = u.window_len().expect("nonzero series") as u32;
    let depth = wu.min(window).max(1);
    // equation exponent carried by slot k
    let eq_exp = |k: i64| match ring.kind() {
        RingKind::SkewLaurent => n + k,
        RingKind::PseudoDiff => n + k - 1,
    };

    let contribs_for = |k: i64| -> Result<Vec<TruncatedSeries>, CentralizerError> {
        basis
            .iter()
            .map(|w| {
                let m = TruncatedSeries::monomial(ring.clone(), w.clone(), k, depth);
                Ok(u.commutator(&m)?)
            })
            .collect()
    };

    // Leading order: kernel of the slot-d operator at its top equation.
    let d = target_deg;
    let lead_contribs = contribs_for(d)?;
    let (rows, _) = linear_rows(&lead_contribs, None, Some(eq_exp(d)))?;
    let lead_kernel = if rows.is_empty() {
        // no constraint at all: any leading coefficient works
        Matrix::<Rational>::zero(1, basis.len()).kernel_basis()
    } else {
        Matrix::from_rows(rows).kernel_basis()
    };
    if lead_kernel.is_empty() {
        return Ok(PosdegOutcome::Obstructed {
            order: d,
            residual: "no leading coefficient in the ansatz satisfies the top equation".into(),
        });
    }
    let beta_d = normalize_leading(&lead_kernel);
    let lead_coeff = combine(&basis, &beta_d);
    let mut b = TruncatedSeries::monomial(ring.clone(), lead_coeff, d, depth);

    // Lower orders, one slot at a time.
    for k in (d - depth as i64 + 1..d).rev() {
        let e = eq_exp(k);
        let residual = u.commutator(&b)?;
        if residual.coeff(e).is_none() {
            break; // window exhausted
        }
        let contribs = contribs_for(k)?;
        let (rows, rhs) = linear_rows(&contribs, Some(&residual.neg()), Some(e))?;
        if rows.is_empty() {
            continue; // nothing to match at this order
        }
        match Matrix::from_rows(rows).solve(&rhs) {
            Some(coords) => {
                let coeff = combine(&basis, &coords);
                if !coeff.is_zero() {
                    b = b.add(&TruncatedSeries::monomial(ring.clone(), coeff, k, depth))?;
                }
            }
            None => {
                let res = residual
                    .coeff(e)
                    .map(|c| format!("{}", c))
                    .unwrap_or_default();
                return Ok(PosdegOutcome::Obstructed {
                    order: k,
                    residual: format!("order-{} equation unsolvable; residual {}", k, res),
                });
            }
        }
    }
    let commutes = u.commutator(&b)?.is_zero_within_window();
    Ok(PosdegOutcome::Found(CentralizerWitness {
        element: b,
        commutes_to_window: commutes,
        construction: Construction::LeadingTermMatch,
    }))
}

/// Deterministic choice from a kernel basis: prefer constant part 1.
fn normalize_leading(kernel: &[Vec<Rational>]) -> Vec<Rational> {
    // ansatz ordering puts the constant monomial first
    if let Some(v) = kernel.iter().find(|v| !v[0].is_zero()) {
        let inv = v[0].clone().recip();
        return v.iter().map(|c| c * &inv).collect();
    }
    let v = &kernel[0];
    let first = v.iter().find(|c| !c.is_zero()).expect("kernel vector nonzero");
    let inv = first.clone().recip();
    v.iter().map(|c| c * &inv).collect()
}

// ---------------------------------------------------------------------------
// Centre probe
// ---------------------------------------------------------------------------

pub struct CentreProbeReport {
    pub ring: RingTag,
    pub window: u32,
    pub ansatz_deg: u32,
    /// Per degree: basis of coefficients ζ such that ζX^d commutes with both
    /// the series generator and a generic coefficient within the window.
    pub degrees: Vec<(i64, Vec<RatFunc>)>,
}

impl CentreProbeReport {
    /// True when the only solutions are the constants at degree 0.
    pub fn is_exactly_constants(&self) -> bool {
        self.degrees.iter().all(|(d, basis)| {
            if *d == 0 {
                basis.len() == 1 && basis[0].as_constant().is_some()
            } else {
                basis.is_empty()
            }
        })
    }

    /// True when the solutions are exactly the K(C)-polynomials of the
    /// ansatz at degree 0 and nothing elsewhere.
    pub fn is_exactly_kc(&self) -> bool {
        let expect = self.ansatz_deg as usize + 1;
        self.degrees.iter().all(|(d, basis)| {
            if *d == 0 {
                basis.len() == expect && basis.iter().all(|f| f.in_kc())
            } else {
                basis.is_empty()
            }
        })
    }
}

impl fmt::Display for CentreProbeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "centre probe of {} (window {}, ansatz degree {})",
            self.ring.name(),
            self.window,
            self.ansatz_deg
        )?;
        for (d, basis) in &self.degrees {
            if basis.is_empty() {
                writeln!(f, "  degree {:>3}: none", d)?;
            } else {
                let names: Vec<String> = basis.iter().map(|b| format!("{}", b)).collect();
                writeln!(f, "  degree {:>3}: span{{ {} }}", d, names.join(", "))?;
            }
        }
        Ok(())
    }
}

/// Solve, degree by degree, for elements commuting with both the series
/// generator and a generic coefficient (H resp. x) within the window.
pub fn centre_probe(
    ring: &RingTag,
    deg_lo: i64,
    deg_hi: i64,
    window: u32,
    ansatz_deg: u32,
) -> Result<CentreProbeReport, CentralizerError> {
    assert!(deg_lo <= deg_hi);
    let basis = ansatz_monomials(ring.vars(), ansatz_deg);
    let gen = TruncatedSeries::gen(ring.clone(), window);
    let coeff_gen = match ring.vars() {
        VarSet::X => RatFunc::var_x(),
        v => RatFunc::var_h(v),
    };
    let cg = TruncatedSeries::scalar(ring.clone(), coeff_gen, window);
    let mut degrees = Vec::new();
    for d in deg_lo..=deg_hi {
        let mut contribs_gen = Vec::new();
        let mut contribs_cg = Vec::new();
        for w in &basis {
            let m = TruncatedSeries::monomial(ring.clone(), w.clone(), d, window);
            contribs_gen.push(m.commutator(&gen)?);
            contribs_cg.push(m.commutator(&cg)?);
        }
        let (mut rows, _) = linear_rows(&contribs_gen, None, None)?;
        let (rows2, _) = linear_rows(&contribs_cg, None, None)?;
        rows.extend(rows2);
        let kernel = if rows.is_empty() {
            Matrix::<Rational>::zero(1, basis.len()).kernel_basis()
        } else {
            Matrix::from_rows(rows).kernel_basis()
        };
        let sols: Vec<RatFunc> = kernel.iter().map(|v| combine(&basis, v)).collect();
        degrees.push((d, sols));
    }
    Ok(CentreProbeReport {
        ring: ring.clone(),
        window,
        ansatz_deg,
        degrees,
    })
}

// ---------------------------------------------------------------------------
// Eigenspace factorization D(a,λ) = C(a)·p = p·C(a)
// ---------------------------------------------------------------------------

/// Check, within the window, that multiplying centralizer samples by an
/// eigenvector p stays in the λ-eigenspace, and that eigenvectors divided by
/// p fall back into the centralizer.
pub fn verify_eigenspace_factorization(
    a: &TruncatedSeries,
    p: &TruncatedSeries,
    lambda: &RatFunc,
    sample_c: &[TruncatedSeries],
) -> Result<bool, CentralizerError> {
    if lambda.is_zero() {
        return Err(CentralizerError::Precondition("λ must be nonzero".into()));
    }
    if p.leading().is_err() {
        return Err(CentralizerError::Precondition(
            "p must be invertible within the window".into(),
        ));
    }
    let ap = a.commutator(p)?;
    if !ap.eq_within(&p.scale(lambda)?) {
        return Err(CentralizerError::Precondition(
            "[a, p] ≠ λp within the window".into(),
        ));
    }
    let p_inv = p.inv()?;
    for c in sample_c {
        if !a.commutator(c)?.is_zero_within_window() {
            return Err(CentralizerError::Precondition(
                "a sample element does not commute with a within the window".into(),
            ));
        }
        // (i) c·p stays in the λ-eigenspace
        let cp = c.mul(p)?;
        if !a.commutator(&cp)?.eq_within(&cp.scale(lambda)?) {
            return Ok(false);
        }
        // (ii) q := p·c is in the eigenspace and q·p⁻¹ recovers a centralizer
        let q = p.mul(c)?;
        if !a.commutator(&q)?.eq_within(&q.scale(lambda)?) {
            return Ok(false);
        }
        if !a.commutator(&q.mul(&p_inv)?)?.is_zero_within_window() {
            return Ok(false);
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// ccc pair checks
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct CccReport {
    pub commuting: bool,
    pub bounded_centralizers_equal: bool,
    pub intersection_trivial: bool,
    pub centralizer_a_commutative: bool,
    pub centralizer_b_commutative: bool,
    pub dim_a: usize,
    pub dim_b: usize,
    pub dim_intersection: usize,
    /// (commuting ⟹ equal) and (non-commuting ⟹ trivial intersection).
    pub dichotomy_consistent: bool,
    pub details: String,
}

/// Bounded ccc check in a presented algebra: exact centralizer slices at the
/// Bernstein bound, their pairwise commutativity, and the equal-or-trivial
/// dichotomy for the pair.
pub fn check_ccc_pair(
    a: &WeylLikeElement,
    b: &WeylLikeElement,
    bound: u32,
) -> Result<CccReport, CentralizerError> {
    if a.is_scalar() || b.is_scalar() {
        return Err(CentralizerError::Precondition(
            "central (scalar) inputs are excluded".into(),
        ));
    }
    let ca = classify::commutant_basis(a, bound)?;
    let cb = classify::commutant_basis(b, bound)?;
    let rows_a = classify::basis_rows(&ca, bound);
    let rows_b = classify::basis_rows(&cb, bound);
    let commuting = a.commutator(b).map_err(ClassifyError::Weyl)?.is_zero();
    let equal = linalg::same_span(&rows_a, &rows_b);
    let inter = linalg::intersection_dim(&rows_a, &rows_b);
    let pairwise = |basis: &[WeylLikeElement]| -> Result<bool, CentralizerError> {
        for (i, u) in basis.iter().enumerate() {
            for v in &basis[i + 1..] {
                if !u.commutator(v).map_err(ClassifyError::Weyl)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    };
    let comm_a = pairwise(&ca)?;
    let comm_b = pairwise(&cb)?;
    let trivial = inter == 1; // constants only
    let dichotomy = if commuting { equal } else { trivial };
    let details = format!(
        "bound {}: dim C(a) = {}, dim C(b) = {}, dim intersection = {}; {}",
        bound,
        ca.len(),
        cb.len(),
        inter,
        if commuting {
            "commuting pair"
        } else {
            "non-commuting pair"
        }
    );
    Ok(CccReport {
        commuting,
        bounded_centralizers_equal: equal,
        intersection_trivial: trivial,
        centralizer_a_commutative: comm_a,
        centralizer_b_commutative: comm_b,
        dim_a: ca.len(),
        dim_b: cb.len(),
        dim_intersection: inter,
        dichotomy_consistent: dichotomy,
        details,
    })
}

/// Series-ring variant: bounded commutant spaces over the exponent range
/// with polynomial-ansatz coefficients.
pub fn check_ccc_pair_series(
    a: &TruncatedSeries,
    b: &TruncatedSeries,
    deg_lo: i64,
    deg_hi: i64,
    window: u32,
    ansatz_deg: u32,
) -> Result<CccReport, CentralizerError> {
    if a.ring() != b.ring() {
        return Err(CentralizerError::Series(SeriesError::RingMismatch));
    }
    let ring = a.ring().clone();
    let basis = ansatz_monomials(ring.vars(), ansatz_deg);
    let slots: Vec<i64> = (deg_lo..=deg_hi).collect();
    let commutant = |u: &TruncatedSeries| -> Result<(Vec<Vec<Rational>>, Vec<TruncatedSeries>), CentralizerError> {
        let mut contribs = Vec::new();
        for e in &slots {
            for w in &basis {
                let m = TruncatedSeries::monomial(ring.clone(), w.clone(), *e, window);
                contribs.push(u.commutator(&m)?);
            }
        }
        let (rows, _) = linear_rows(&contribs, None, None)?;
        let kernel = if rows.is_empty() {
            Matrix::<Rational>::zero(1, contribs.len()).kernel_basis()
        } else {
            Matrix::from_rows(rows).kernel_basis()
        };
        let elems = kernel
            .iter()
            .map(|v| {
                let mut terms: Vec<(i64, RatFunc)> = Vec::new();
                for (si, e) in slots.iter().enumerate() {
                    let coords = &v[si * basis.len()..(si + 1) * basis.len()];
                    let c = combine(&basis, coords);
                    if !c.is_zero() {
                        terms.push((*e, c));
                    }
                }
                TruncatedSeries::from_terms(ring.clone(), terms, window)
            })
            .collect();
        Ok((kernel, elems))
    };
    let (rows_a, elems_a) = commutant(a)?;
    let (rows_b, elems_b) = commutant(b)?;
    let commuting = a.commutator(b)?.is_zero_within_window();
    let equal = linalg::same_span(&rows_a, &rows_b);
    let inter = linalg::intersection_dim(&rows_a, &rows_b);
    // centre of the ring inside the same ansatz
    let centre = centre_probe(&ring, deg_lo, deg_hi, window, ansatz_deg)?;
    let centre_dim: usize = centre.degrees.iter().map(|(_, b)| b.len()).sum();
    let trivial = inter == centre_dim;
    let pairwise = |elems: &[TruncatedSeries]| -> Result<bool, CentralizerError> {
        for (i, u) in elems.iter().enumerate() {
            for v in &elems[i + 1..] {
                if !u.commutator(v)?.is_zero_within_window() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    };
    let comm_a = pairwise(&elems_a)?;
    let comm_b = pairwise(&elems_b)?;
    let dichotomy = if commuting { equal } else { trivial };
    let details = format!(
        "ring {}, degrees [{}, {}], window {}, ansatz {}: dim C(a) = {}, dim C(b) = {}, \
         dim intersection = {}, centre dim = {}",
        ring.name(),
        deg_lo,
        deg_hi,
        window,
        ansatz_deg,
        rows_a.len(),
        rows_b.len(),
        inter,
        centre_dim
    );
    Ok(CccReport {
        commuting,
        bounded_centralizers_equal: equal,
        intersection_trivial: trivial,
        centralizer_a_commutative: comm_a,
        centralizer_b_commutative: comm_b,
        dim_a: rows_a.len(),
        dim_b: rows_b.len(),
        dim_intersection: inter,
        dichotomy_consistent: dichotomy,
        details,
    })
}

// ---------------------------------------------------------------------------
// Semi-simple uniqueness: common eigenvector forces b ∈ K*a + Z(A)
// ---------------------------------------------------------------------------

/// Weyl-algebra form: with ab = ba, \[a,p\] = λp, \[b,p\] = μp (λ,μ ≠ 0), the
/// combination μa - λb must be central, i.e. a scalar.
pub fn verify_semisimple_uniqueness_weyl(
    a: &WeylLikeElement,
    b: &WeylLikeElement,
    p: &WeylLikeElement,
    lambda: &Rational,
    mu: &Rational,
) -> Result<bool, CentralizerError> {
    if lambda.is_zero() || mu.is_zero() {
        return Err(CentralizerError::Precondition(
            "eigenvalues must be nonzero".into(),
        ));
    }
    let comm = |x: &WeylLikeElement, y: &WeylLikeElement| {
        x.commutator(y).map_err(ClassifyError::Weyl)
    };
    if !comm(a, b)?.is_zero() {
        return Err(CentralizerError::Precondition("a and b must commute".into()));
    }
    if comm(a, p)? != p.scale(lambda) {
        return Err(CentralizerError::Precondition("[a,p] ≠ λp".into()));
    }
    if comm(b, p)? != p.scale(mu) {
        return Err(CentralizerError::Precondition("[b,p] ≠ μp".into()));
    }
    let z = a.scale(mu).sub(&b.scale(lambda)).map_err(ClassifyError::Weyl)?;
    Ok(z.is_scalar())
}

/// Series-ring form; centrality at the bound means degree ≤ 0, twist-fixed
/// coefficient at exponent 0 and nothing else in the window.
pub fn verify_semisimple_uniqueness_series(
    a: &TruncatedSeries,
    b: &TruncatedSeries,
    p: &TruncatedSeries,
    lambda: &RatFunc,
    mu: &RatFunc,
) -> Result<bool, CentralizerError> {
    if lambda.is_zero() || mu.is_zero() {
        return Err(CentralizerError::Precondition(
            "eigenvalues must be nonzero".into(),
        ));
    }
    if !a.commutator(b)?.is_zero_within_window() {
        return Err(CentralizerError::Precondition(
            "a and b must commute within the window".into(),
        ));
    }
    if !a.commutator(p)?.eq_within(&p.scale(lambda)?) {
        return Err(CentralizerError::Precondition("[a,p] ≠ λp".into()));
    }
    if !b.commutator(p)?.eq_within(&p.scale(mu)?) {
        return Err(CentralizerError::Precondition("[b,p] ≠ μp".into()));
    }
    let z = a.scale(mu)?.sub(&b.scale(lambda)?)?;
    is_central_within(&z)
}

/// Centre membership at the window: every known coefficient off exponent 0
/// vanishes and the exponent-0 coefficient is fixed by the twist.
fn is_central_within(z: &TruncatedSeries) -> Result<bool, CentralizerError> {
    for (e, c) in z.terms() {
        if *e != 0 && !c.is_zero() {
            return Ok(false);
        }
    }
    match z.coeff(0) {
        None => Ok(true),
        Some(c0) => {
            if c0.is_zero() {
                return Ok(true);
            }
            Ok(z.ring().twist().is_fixed(&c0)?)
        }
    }
}
