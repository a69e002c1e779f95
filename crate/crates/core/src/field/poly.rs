//! Exact polynomial arithmetic backing the coefficient fields.
//!
//! `Poly1` is a dense univariate polynomial over the rationals (used for the
//! f(t) of polynomial evaluation, characteristic polynomials and rational
//! root extraction). `Poly2` is a sparse polynomial in at most two abstract
//! variables v1 < v2; rational functions are quotients of `Poly2` values.
//!
//! Monomial order on `Poly2` is graded lexicographic with v1 < v2: compare
//! total degree, then the v2 exponent, then the v1 exponent.

use std::collections::BTreeMap;

use num::bigint::BigInt;
use num::integer::Integer;
use num::traits::{One, Signed, Zero};

use super::rat::{rat_pow, Rational};

// ---------------------------------------------------------------------------
// Univariate polynomials
// ---------------------------------------------------------------------------

/// Dense univariate polynomial over `Rational`, ascending degree order.
/// Invariant: empty vector for zero, otherwise the last coefficient is nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly1 {
    coeffs: Vec<Rational>,
}

impl Poly1 {
    pub fn zero() -> Self {
        Poly1 { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly1::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Poly1 { coeffs: vec![c] };
        p.normalize();
        p
    }

    /// The monomial c t^k.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        let mut p = Poly1 { coeffs };
        p.normalize();
        p
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        let mut p = Poly1 { coeffs };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; zero polynomial reports None.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Poly1) -> Poly1 {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(self.coeff(k) + other.coeff(k));
        }
        Poly1::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &Poly1) -> Poly1 {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly1 {
        Poly1 {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly1 {
        if c.is_zero() {
            return Poly1::zero();
        }
        Poly1 {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, other: &Poly1) -> Poly1 {
        if self.is_zero() || other.is_zero() {
            return Poly1::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly1::from_coeffs(coeffs)
    }

    /// Euclidean division: self = q * d + r with deg r < deg d. Panics on d = 0.
    pub fn divmod(&self, d: &Poly1) -> (Poly1, Poly1) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.degree().unwrap();
        let dl = d.leading().unwrap().clone();
        let mut r = self.clone();
        let mut q = Poly1::zero();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let c = r.leading().unwrap() / &dl;
            let shift = rd - dd;
            let term = Poly1::monomial(c, shift);
            q = q.add(&term);
            r = r.sub(&term.mul(d));
        }
        (q, r)
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Poly1) -> Poly1 {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divmod(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> Poly1 {
        match self.leading() {
            None => Poly1::zero(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    pub fn derivative(&self) -> Poly1 {
        if self.coeffs.len() <= 1 {
            return Poly1::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * Rational::from_integer(BigInt::from(k)))
            .collect();
        Poly1::from_coeffs(coeffs)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Squarefree part: self / gcd(self, self').
    pub fn squarefree_part(&self) -> Poly1 {
        if self.is_zero() {
            return Poly1::zero();
        }
        let g = self.gcd(&self.derivative());
        let (q, r) = self.divmod(&g);
        debug_assert!(r.is_zero());
        q.monic()
    }

    /// All rational roots with multiplicities stripped, by the rational root
    /// theorem on the squarefree part with cleared denominators. Returns
    /// `(roots, complete)`; `complete` is false when a trailing or leading
    /// coefficient could not be fully factored within the trial-division
    /// bound, in which case roots may have been missed.
    pub fn rational_roots(&self) -> (Vec<Rational>, bool) {
        if self.is_zero() {
            return (Vec::new(), true);
        }
        let mut roots = Vec::new();
        let sf = self.squarefree_part();
        // Factor out t^k first; 0 is then a root exactly when k > 0.
        let k0 = sf.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0);
        if k0 > 0 {
            roots.push(Rational::zero());
        }
        let reduced = Poly1::from_coeffs(sf.coeffs[k0..].to_vec());
        if reduced.degree() == Some(0) || reduced.is_zero() {
            return (roots, true);
        }
        // Clear denominators to land in Z[t].
        let mut lcm = BigInt::one();
        for c in reduced.coeffs() {
            lcm = lcm.lcm(c.denom());
        }
        let int_coeffs: Vec<BigInt> = reduced
            .coeffs()
            .iter()
            .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let a0 = int_coeffs.first().unwrap().clone();
        let an = int_coeffs.last().unwrap().clone();
        let (p_divs, p_ok) = divisors(&a0.abs());
        let (q_divs, q_ok) = divisors(&an.abs());
        for p in &p_divs {
            for q in &q_divs {
                for sign in [1i64, -1] {
                    let cand = Rational::new(p * BigInt::from(sign), q.clone());
                    if reduced.eval(&cand).is_zero() && !roots.contains(&cand) {
                        roots.push(cand.clone());
                    }
                }
            }
        }
        roots.sort();
        (roots, p_ok && q_ok)
    }
}

/// Divisors of |n| via trial division. Second component is false when a
/// cofactor above the trial bound was left unfactored (divisor list then
/// incomplete).
fn divisors(n: &BigInt) -> (Vec<BigInt>, bool) {
    if n.is_zero() {
        return (vec![BigInt::one()], true);
    }
    let mut rest = n.clone();
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let bound = BigInt::from(1_000_000u64);
    let mut d = BigInt::from(2u32);
    while &d * &d <= rest && d <= bound {
        let mut m = 0;
        while (&rest % &d).is_zero() {
            rest /= &d;
            m += 1;
        }
        if m > 0 {
            primes.push((d.clone(), m));
        }
        d += 1;
    }
    let mut complete = true;
    if rest > BigInt::one() {
        if rest <= &bound * &bound {
            primes.push((rest.clone(), 1)); // remaining cofactor is prime
        } else {
            primes.push((rest.clone(), 1));
            complete = false;
        }
    }
    let mut divs = vec![BigInt::one()];
    for (p, m) in primes {
        let prev = divs.clone();
        let mut pw = BigInt::one();
        for _ in 0..m {
            pw = &pw * &p;
            for d in &prev {
                divs.push(d * &pw);
            }
        }
    }
    (divs, complete)
}

// ---------------------------------------------------------------------------
// Bivariate polynomials
// ---------------------------------------------------------------------------

/// Monomial exponents (v1, v2).
pub type Expo = (u32, u32);

/// Graded-lex comparison with v1 < v2.
fn mono_cmp(a: &Expo, b: &Expo) -> std::cmp::Ordering {
    let ta = a.0 + a.1;
    let tb = b.0 + b.1;
    ta.cmp(&tb).then(a.1.cmp(&b.1)).then(a.0.cmp(&b.0))
}

/// Sparse polynomial in at most two variables over `Rational`.
/// Invariant: stored coefficients are nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly2 {
    terms: BTreeMap<Expo, Rational>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Poly2 {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Poly2::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((0, 0), c);
        }
        Poly2 { terms }
    }

    pub fn monomial(c: Rational, e: Expo) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Poly2 { terms }
    }

    /// The variable v1 (H or x depending on the ambient field).
    pub fn var1() -> Self {
        Poly2::monomial(Rational::one(), (1, 0))
    }

    /// The variable v2 (C).
    pub fn var2() -> Self {
        Poly2::monomial(Rational::one(), (0, 1))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| *e == (0, 0))
    }

    /// Constant value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.terms.is_empty() {
            Some(Rational::zero())
        } else if self.is_constant() {
            self.terms.get(&(0, 0)).cloned()
        } else {
            None
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Expo, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: Expo) -> Rational {
        self.terms.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn deg_v1(&self) -> u32 {
        self.terms.keys().map(|e| e.0).max().unwrap_or(0)
    }

    pub fn deg_v2(&self) -> u32 {
        self.terms.keys().map(|e| e.1).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.0 + e.1).max().unwrap_or(0)
    }

    /// Leading (exponent, coefficient) under graded lex, None for zero.
    pub fn leading_term(&self) -> Option<(Expo, Rational)> {
        self.terms
            .iter()
            .max_by(|a, b| mono_cmp(a.0, b.0))
            .map(|(e, c)| (*e, c.clone()))
    }

    fn insert_add(&mut self, e: Expo, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
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

    pub fn add(&self, other: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_add(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly2) -> Poly2 {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly2 {
        Poly2 {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e, -c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly2 {
        if c.is_zero() {
            return Poly2::zero();
        }
        Poly2 {
            terms: self.terms.iter().map(|(e, a)| (*e, a * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly2) -> Poly2 {
        let mut out = Poly2::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.insert_add((e1.0 + e2.0, e1.1 + e2.1), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Poly2 {
        let mut acc = Poly2::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact division; None when `d` does not divide `self`.
    pub fn divide(&self, d: &Poly2) -> Option<Poly2> {
        assert!(!d.is_zero(), "division by zero polynomial");
        let (de, dc) = d.leading_term().unwrap();
        let mut r = self.clone();
        let mut q = Poly2::zero();
        while let Some((re, rc)) = r.leading_term() {
            if re.0 < de.0 || re.1 < de.1 {
                return None;
            }
            let qe = (re.0 - de.0, re.1 - de.1);
            let qc = rc / &dc;
            let t = Poly2::monomial(qc, qe);
            q = q.add(&t);
            r = r.sub(&t.mul(d));
        }
        Some(q)
    }

    /// Normalize so the graded-lex leading coefficient is 1.
    pub fn monic(&self) -> Poly2 {
        match self.leading_term() {
            None => Poly2::zero(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// View as a univariate polynomial in v2 with v1-only coefficients,
    /// ascending in the v2 exponent.
    fn coeffs_in_v2(&self) -> Vec<Poly2> {
        let d = self.deg_v2() as usize;
        let mut out = vec![Poly2::zero(); d + 1];
        for (e, c) in &self.terms {
            out[e.1 as usize].insert_add((e.0, 0), c.clone());
        }
        out
    }

    fn from_coeffs_in_v2(coeffs: &[Poly2]) -> Poly2 {
        let mut out = Poly2::zero();
        for (j, cj) in coeffs.iter().enumerate() {
            for (e, c) in &cj.terms {
                out.insert_add((e.0, j as u32), c.clone());
            }
        }
        out
    }

    /// Univariate gcd in v1 (inputs must not involve v2), monic.
    fn gcd_v1(&self, other: &Poly2) -> Poly2 {
        debug_assert!(self.deg_v2() == 0 && other.deg_v2() == 0);
        let to1 = |p: &Poly2| {
            let mut coeffs = vec![Rational::zero(); p.deg_v1() as usize + 1];
            for (e, c) in &p.terms {
                coeffs[e.0 as usize] = c.clone();
            }
            Poly1::from_coeffs(coeffs)
        };
        let g = to1(self).gcd(&to1(other));
        let mut out = Poly2::zero();
        for (k, c) in g.coeffs().iter().enumerate() {
            out.insert_add((k as u32, 0), c.clone());
        }
        out
    }

    /// Content with respect to v2: gcd of the v1-only coefficients.
    fn content_v2(&self) -> Poly2 {
        let mut g = Poly2::zero();
        for cj in self.coeffs_in_v2() {
            if cj.is_zero() {
                continue;
            }
            g = if g.is_zero() { cj.monic() } else { g.gcd_v1(&cj) };
        }
        g
    }

    fn primitive_part_v2(&self) -> Poly2 {
        let c = self.content_v2();
        self.divide(&c).expect("content divides")
    }

    /// Pseudo-remainder of f by g as polynomials in v2 over Q[v1].
    fn prem_v2(f: &Poly2, g: &Poly2) -> Poly2 {
        let mut fc = f.coeffs_in_v2();
        let gc = g.coeffs_in_v2();
        let dg = gc.len() - 1;
        let lg = gc[dg].clone();
        while fc.len() >= gc.len() && !fc.iter().all(|c| c.is_zero()) {
            while fc.last().is_some_and(|c| c.is_zero()) {
                fc.pop();
            }
            if fc.len() < gc.len() {
                break;
            }
            let df = fc.len() - 1;
            let lf = fc[df].clone();
            // lg * f - lf * v2^(df-dg) * g
            for c in fc.iter_mut() {
                *c = c.mul(&lg);
            }
            for (j, gj) in gc.iter().enumerate() {
                let idx = j + df - dg;
                fc[idx] = fc[idx].sub(&lf.mul(gj));
            }
        }
        Poly2::from_coeffs_in_v2(&fc)
    }

    /// Gcd, monic under graded lex. Bivariate inputs use the
    /// content/primitive-part Euclidean algorithm in the higher variable.
    pub fn gcd(&self, other: &Poly2) -> Poly2 {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.deg_v2() == 0 && other.deg_v2() == 0 {
            return self.gcd_v1(other);
        }
        let ca = self.content_v2();
        let cb = other.content_v2();
        let cg = ca.gcd_v1(&cb);
        let mut f = self.primitive_part_v2();
        let mut g = other.primitive_part_v2();
        if f.deg_v2() < g.deg_v2() {
            std::mem::swap(&mut f, &mut g);
        }
        loop {
            if g.is_zero() {
                let pp = f.primitive_part_v2();
                return cg.mul(&pp).monic();
            }
            if g.deg_v2() == 0 {
                // Coprime as polynomials in v2.
                return cg.monic();
            }
            let r = Poly2::prem_v2(&f, &g);
            f = g;
            g = if r.is_zero() { r } else { r.primitive_part_v2() };
        }
    }

    /// Substitute v1 ↦ v1 - k (the shift automorphism applied k times).
    pub fn shift_v1(&self, k: i64) -> Poly2 {
        if k == 0 {
            return self.clone();
        }
        let shift = Poly2::var1().sub(&Poly2::constant(Rational::from_integer(BigInt::from(k))));
        // Power table for (v1 - k)^a.
        let maxa = self.deg_v1();
        let mut pows = Vec::with_capacity(maxa as usize + 1);
        pows.push(Poly2::one());
        for _ in 0..maxa {
            pows.push(pows.last().unwrap().mul(&shift));
        }
        let mut out = Poly2::zero();
        for (e, c) in &self.terms {
            let t = pows[e.0 as usize].scale(c);
            for (te, tc) in &t.terms {
                out.insert_add((te.0, te.1 + e.1), tc.clone());
            }
        }
        out
    }

    /// Substitute v1 ↦ λ^k v1 (the scale automorphism applied k times).
    pub fn scale_v1(&self, lambda: &Rational, k: i64) -> Poly2 {
        if k == 0 {
            return self.clone();
        }
        let mut out = Poly2::zero();
        for (e, c) in &self.terms {
            out.insert_add(*e, c * rat_pow(lambda, k * e.0 as i64));
        }
        out
    }

    /// d/d(v1).
    pub fn derivative_v1(&self) -> Poly2 {
        let mut out = Poly2::zero();
        for (e, c) in &self.terms {
            if e.0 > 0 {
                out.insert_add(
                    (e.0 - 1, e.1),
                    c * Rational::from_integer(BigInt::from(e.0)),
                );
            }
        }
        out
    }

    /// Render with the given variable names, e.g. "H^2*C + 3".
    pub fn render(&self, v1: &str, v2: &str) -> String {
        use super::rat::format_rational;
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts: Vec<(Expo, &Rational)> = self.terms.iter().map(|(e, c)| (*e, c)).collect();
        parts.sort_by(|a, b| mono_cmp(&b.0, &a.0));
        let mut s = String::new();
        for (idx, (e, c)) in parts.iter().enumerate() {
            let neg = c.is_negative();
            let mag = if neg { -(*c).clone() } else { (*c).clone() };
            if idx == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mut factors = Vec::new();
            if !mag.is_one() || (e.0 == 0 && e.1 == 0) {
                factors.push(format_rational(&mag));
            }
            for (name, pw) in [(v1, e.0), (v2, e.1)] {
                if pw == 1 {
                    factors.push(name.to_string());
                } else if pw > 1 {
                    factors.push(format!("{}^{}", name, pw));
                }
            }
            s.push_str(&factors.join("*"));
        }
        s
    }
}
