#![allow(dead_code)]

//! Shared oracles and random generators for the integration tests. The
//! oracles are independent of the implementation paths they check: Weyl
//! multiplication is re-derived by single-relation rewriting, and the
//! eigenvalue data is re-derived from the rectangular pencil without the
//! invariant-subspace optimization.

use num::traits::{One, Zero};
use rand::Rng;

use skewcas::classify::{basis_rows, MonoIndex};
use skewcas::field::poly::{Poly1, Poly2};
use skewcas::field::rat::{rat, Rational};
use skewcas::field::ratfunc::{RatFunc, VarSet};
use skewcas::linalg::{self, Matrix};
use skewcas::weyl::{bounded_dim, bounded_monomials};
use skewcas::{AlgebraPresentation, DixmierClass, RingTag, TruncatedSeries, WeylLikeElement};

// ---------------------------------------------------------------------------
// Rewriting oracle for normal forms
// ---------------------------------------------------------------------------

/// Normal-order a word over {x, d} by rewriting the single relation
/// ∂x → μx∂ + 1 (μ = 1 for the Weyl algebra) to a fixpoint.
pub fn rewrite_word(pres: &AlgebraPresentation, word: &[u8]) -> WeylLikeElement {
    let mut terms: Vec<(Rational, Vec<u8>)> = vec![(Rational::one(), word.to_vec())];
    let mut out = WeylLikeElement::zero(pres.clone());
    while let Some((c, word)) = terms.pop() {
        let pos = word.windows(2).position(|p| p == [b'd', b'x']);
        match pos {
            None => {
                let i = word.iter().filter(|&&g| g == b'x').count() as u32;
                let j = word.len() as u32 - i;
                let m = WeylLikeElement::monomial(pres.clone(), c, i, j);
                out = out.add(&m).unwrap();
            }
            Some(p) => {
                let mu = match pres {
                    AlgebraPresentation::Weyl => Rational::one(),
                    AlgebraPresentation::QuantumWeyl(mu) => mu.clone(),
                    AlgebraPresentation::QuantumPlane(l) => l.clone().recip(),
                };
                let mut swapped = word.clone();
                swapped.swap(p, p + 1);
                if matches!(pres, AlgebraPresentation::QuantumPlane(_)) {
                    terms.push((c * mu, swapped));
                } else {
                    let mut dropped = word.clone();
                    dropped.drain(p..p + 2);
                    terms.push((c.clone() * mu, swapped));
                    terms.push((c, dropped));
                }
            }
        }
    }
    out
}

pub fn monomial_word(i: u32, j: u32) -> Vec<u8> {
    let mut w = vec![b'x'; i as usize];
    w.extend(std::iter::repeat(b'd').take(j as usize));
    w
}

// ---------------------------------------------------------------------------
// Exhaustive eigen/classification oracle (no invariant-subspace step)
// ---------------------------------------------------------------------------

fn poly1_to_ratfunc(p: &Poly1) -> RatFunc {
    let mut q = Poly2::zero();
    for (k, c) in p.coeffs().iter().enumerate() {
        q = q.add(&Poly2::monomial(c.clone(), (k as u32, 0)));
    }
    RatFunc::from_poly(q, VarSet::H)
}

fn ratfunc_to_poly1(f: &RatFunc) -> Poly1 {
    assert!(f.is_polynomial(), "expected a polynomial determinant");
    let mut coeffs = vec![Rational::zero(); f.num().deg_v1() as usize + 1];
    for (e, c) in f.num().terms() {
        assert_eq!(e.1, 0);
        coeffs[e.0 as usize] = c.clone();
    }
    Poly1::from_coeffs(coeffs)
}

/// All rational eigenpairs of ad a on the degree-≤N slice, found by brute
/// force: λ is an eigenvalue iff the rectangular pencil M - λE drops rank,
/// iff det((M - λE)ᵀ(M - λE)) = 0; rational roots of that determinant are
/// extracted and each kernel is recomputed exactly.
pub fn oracle_eigen_search(
    a: &WeylLikeElement,
    bound: u32,
) -> (Vec<Rational>, Vec<(Rational, WeylLikeElement)>) {
    let pres = a.presentation().clone();
    let small = MonoIndex::new(bound);
    let d = small.dim();
    let big_deg = bound + (a.bernstein_degree().finite().unwrap_or(1).max(1) as u32);
    let big = MonoIndex::new(big_deg);
    let bigdim = big.dim();
    // M: images of the bounded basis under ad a, in big coordinates.
    let mut m_cols: Vec<Vec<Rational>> = Vec::with_capacity(d);
    for (i, j) in bounded_monomials(bound) {
        let mono = WeylLikeElement::monomial(pres.clone(), Rational::one(), i, j);
        let img = a.commutator(&mono).unwrap();
        m_cols.push(big.to_vec(&img).unwrap());
    }
    // E: inclusion of small coordinates into big coordinates.
    let mut e_cols: Vec<Vec<Rational>> = Vec::with_capacity(d);
    for (k, _) in bounded_monomials(bound).into_iter().enumerate() {
        let mut v = vec![Rational::zero(); bigdim];
        v[k] = Rational::one(); // the big order extends the small order
        e_cols.push(v);
    }
    // Gram matrix of the pencil, entries in Q[λ].
    let lam = Poly1::monomial(Rational::one(), 1);
    let mut gram: Matrix<RatFunc> = Matrix::zero(d, d);
    for i in 0..d {
        for j in i..d {
            let mut acc = Poly1::zero();
            for r in 0..bigdim {
                let pi = Poly1::constant(m_cols[i][r].clone())
                    .sub(&lam.scale(&e_cols[i][r]));
                let pj = Poly1::constant(m_cols[j][r].clone())
                    .sub(&lam.scale(&e_cols[j][r]));
                acc = acc.add(&pi.mul(&pj));
            }
            let rf = poly1_to_ratfunc(&acc);
            *gram.at_mut(i, j) = rf.clone();
            *gram.at_mut(j, i) = rf;
        }
    }
    let det = gram.det();
    assert!(!det.is_zero(), "pencil cannot be identically singular");
    let det_poly = ratfunc_to_poly1(&det);
    let (roots, complete) = det_poly.rational_roots();
    assert!(complete, "oracle root enumeration must be complete");
    let mut eigenvalues = Vec::new();
    let mut pairs = Vec::new();
    for lambda in roots {
        // kernel of M - λE over Q
        let mut pencil: Matrix<Rational> = Matrix::zero(bigdim, d);
        for c in 0..d {
            for r in 0..bigdim {
                *pencil.at_mut(r, c) = &m_cols[c][r] - &lambda * &e_cols[c][r];
            }
        }
        let kernel = pencil.kernel_basis();
        if kernel.is_empty() {
            continue; // spurious root of the Gram determinant cannot happen over R, but be safe
        }
        for v in kernel {
            let b = small.to_elem(&pres, &v);
            assert_eq!(
                a.commutator(&b).unwrap(),
                b.scale(&lambda),
                "oracle eigenpair must be exact"
            );
            pairs.push((lambda.clone(), b));
        }
        eigenvalues.push(lambda);
    }
    eigenvalues.sort();
    (eigenvalues, pairs)
}

/// Exhaustive classification: same verdict table as the implementation but
/// fed with the brute-force eigen data and directly computed nil kernels.
pub fn oracle_classify(
    a: &WeylLikeElement,
    bound: u32,
) -> (DixmierClass, Vec<Rational>, Vec<usize>) {
    let pres = a.presentation().clone();
    let full = bounded_dim(bound);
    let n_max = 2 * bound;
    let mut iterates: Vec<WeylLikeElement> = bounded_monomials(bound)
        .into_iter()
        .map(|(i, j)| WeylLikeElement::monomial(pres.clone(), Rational::one(), i, j))
        .collect();
    let mut profile = Vec::new();
    let mut filled = false;
    for _ in 0..=n_max {
        for v in iterates.iter_mut() {
            *v = a.commutator(v).unwrap();
        }
        // kernel dimension = d - rank of the image rows
        let deg_needed = iterates
            .iter()
            .filter_map(|v| v.bernstein_degree().finite())
            .max()
            .unwrap_or(0) as u32;
        let big = MonoIndex::new(deg_needed.max(bound));
        let rows: Vec<Vec<Rational>> = iterates
            .iter()
            .map(|v| big.to_vec(v).unwrap())
            .collect();
        let dim = full - linalg::span_rank(&rows);
        profile.push(dim);
        if dim == full {
            filled = true;
            break;
        }
    }
    let centralizer_dim = profile[0];
    let nil1 = profile.get(1).copied().unwrap_or(centralizer_dim);
    let nil_exceeds = profile.iter().any(|&d| d > centralizer_dim);
    let (eigenvalues, pairs) = oracle_eigen_search(a, bound);
    let has_nonzero = eigenvalues.iter().any(|l| !l.is_zero());
    let mut rows = basis_rows(
        &pairs.iter().map(|(_, b)| b.clone()).collect::<Vec<_>>(),
        bound,
    );
    rows.extend(basis_rows(
        &skewcas::nil_space(a, 0, bound).unwrap(),
        bound,
    ));
    let span = linalg::span_rank(&rows);
    let nil1_eq_cent = nil1 == centralizer_dim;
    let class = if filled && !has_nonzero {
        DixmierClass::Delta1
    } else if !filled && nil_exceeds && !has_nonzero {
        DixmierClass::Delta2
    } else if has_nonzero && nil1_eq_cent && span == full {
        DixmierClass::Delta3
    } else if has_nonzero && nil1_eq_cent {
        DixmierClass::Delta4
    } else if !has_nonzero && nil1_eq_cent && centralizer_dim < full {
        DixmierClass::Delta5
    } else {
        DixmierClass::Unknown
    };
    (class, eigenvalues, profile)
}

// ---------------------------------------------------------------------------
// Random generators (seeded by the tests)
// ---------------------------------------------------------------------------

pub fn rand_rat<R: Rng>(rng: &mut R) -> Rational {
    let num = rng.gen_range(-3i64..=3);
    let den = rng.gen_range(1i64..=2);
    rat(num, den)
}

pub fn rand_nonzero_rat<R: Rng>(rng: &mut R) -> Rational {
    loop {
        let r = rand_rat(rng);
        if !r.is_zero() {
            return r;
        }
    }
}

pub fn rand_weyl<R: Rng>(
    rng: &mut R,
    pres: &AlgebraPresentation,
    max_deg: u32,
    max_terms: usize,
) -> WeylLikeElement {
    let monos = bounded_monomials(max_deg);
    let mut e = WeylLikeElement::zero(pres.clone());
    let terms = rng.gen_range(1..=max_terms);
    for _ in 0..terms {
        let (i, j) = monos[rng.gen_range(0..monos.len())];
        let c = rand_rat(rng);
        e = e
            .add(&WeylLikeElement::monomial(pres.clone(), c, i, j))
            .unwrap();
    }
    e
}

/// Random non-scalar element.
pub fn rand_nonscalar<R: Rng>(
    rng: &mut R,
    pres: &AlgebraPresentation,
    max_deg: u32,
    max_terms: usize,
) -> WeylLikeElement {
    loop {
        let e = rand_weyl(rng, pres, max_deg, max_terms);
        if !e.is_scalar() {
            return e;
        }
    }
}

/// Random polynomial with degree in [min_deg, max_deg] and nonzero leading
/// coefficient.
pub fn rand_poly1<R: Rng>(rng: &mut R, min_deg: usize, max_deg: usize) -> Poly1 {
    let deg = rng.gen_range(min_deg..=max_deg);
    let mut coeffs: Vec<Rational> = (0..deg).map(|_| rand_rat(rng)).collect();
    coeffs.push(rand_nonzero_rat(rng));
    Poly1::from_coeffs(coeffs)
}

/// Random nonzero truncated series with Laurent-monomial coefficients (the
/// printable sublanguage of the grammar).
pub fn rand_series<R: Rng>(rng: &mut R, ring: &RingTag, window: u32) -> TruncatedSeries {
    let vars = ring.vars();
    loop {
        let nterms = rng.gen_range(1..=4);
        let mut terms: Vec<(i64, RatFunc)> = Vec::new();
        for _ in 0..nterms {
            let e = rng.gen_range(-3i64..=3);
            let c = rand_laurent_coeff(rng, vars);
            if !c.is_zero() {
                terms.push((e, c));
            }
        }
        let s = TruncatedSeries::from_terms(ring.clone(), terms, window);
        if s.terms().count() > 0 {
            return s;
        }
    }
}

fn rand_laurent_coeff<R: Rng>(rng: &mut R, vars: VarSet) -> RatFunc {
    let mut acc = RatFunc::zero(vars);
    for _ in 0..rng.gen_range(1..=2) {
        let c = rand_rat(rng);
        let mut t = RatFunc::constant(c, vars);
        match vars {
            VarSet::H => {
                let p = rng.gen_range(-2i64..=2);
                t = t
                    .mul(&RatFunc::var_h(vars).pow(p).unwrap())
                    .unwrap();
            }
            VarSet::HC => {
                let p = rng.gen_range(-2i64..=2);
                let q = rng.gen_range(0i64..=2);
                t = t.mul(&RatFunc::var_h(vars).pow(p).unwrap()).unwrap();
                t = t.mul(&RatFunc::var_c().pow(q).unwrap()).unwrap();
            }
            VarSet::X => {
                // x is not invertible in the input grammar, so stay polynomial
                let p = rng.gen_range(0i64..=2);
                t = t.mul(&RatFunc::var_x().pow(p).unwrap()).unwrap();
            }
            VarSet::K => {}
        }
        acc = acc.add(&t).unwrap();
    }
    acc
}
