//! Exact dense linear algebra over a field: reduced row echelon form,
//! kernels, rank, span comparisons, and characteristic polynomials via
//! Hessenberg reduction. Everything is deterministic; no pivoting heuristics
//! beyond first-nonzero.

use num::traits::{One, Zero};

use crate::field::poly::Poly1;
use crate::field::rat::Rational;
use crate::field::ratfunc::RatFunc;

/// Field element usable as a matrix entry.
pub trait Scalar: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn div(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl Scalar for Rational {
    fn zero() -> Self {
        <Rational as Zero>::zero()
    }
    fn one() -> Self {
        <Rational as One>::one()
    }
    fn is_zero(&self) -> bool {
        <Rational as Zero>::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div(&self, other: &Self) -> Self {
        self / other
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
}

/// Rational functions form a field; entries must share a variable set.
impl Scalar for RatFunc {
    fn zero() -> Self {
        RatFunc::zero(crate::field::ratfunc::VarSet::H)
    }
    fn one() -> Self {
        RatFunc::one(crate::field::ratfunc::VarSet::H)
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        RatFunc::add(self, other).expect("matching variable sets")
    }
    fn sub(&self, other: &Self) -> Self {
        RatFunc::sub(self, other).expect("matching variable sets")
    }
    fn mul(&self, other: &Self) -> Self {
        RatFunc::mul(self, other).expect("matching variable sets")
    }
    fn div(&self, other: &Self) -> Self {
        RatFunc::div(self, other).expect("nonzero divisor")
    }
    fn neg(&self) -> Self {
        RatFunc::neg(self)
    }
}

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = T::one();
        }
        m
    }

    pub fn from_rows(rows_in: Vec<Vec<T>>) -> Self {
        let rows = rows_in.len();
        let cols = rows_in.first().map_or(0, |r| r.len());
        assert!(rows_in.iter().all(|r| r.len() == cols));
        Matrix {
            rows,
            cols,
            data: rows_in.into_iter().flatten().collect(),
        }
    }

    pub fn at(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut T {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// In-place reduced row echelon form; returns pivot column indices.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.at(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = T::one().div(self.at(r, c));
            for j in c..self.cols {
                *self.at_mut(r, j) = self.at(r, j).mul(&inv);
            }
            for i in 0..self.rows {
                if i != r && !self.at(i, c).is_zero() {
                    let f = self.at(i, c).clone();
                    for j in c..self.cols {
                        let v = self.at(i, j).sub(&f.mul(self.at(r, j)));
                        *self.at_mut(i, j) = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of {v : M v = 0}, one row per basis vector, deterministic
    /// (free variable set to 1, pivots back-substituted).
    pub fn kernel_basis(&self) -> Vec<Vec<T>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_of_col: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = Some(r);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut v = vec![T::zero(); self.cols];
            v[free] = T::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = m.at(r, free).neg();
            }
            basis.push(v);
        }
        basis
    }

    pub fn mat_mul(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, other.rows);
        let mut out: Matrix<T> = Matrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.at(i, j).add(&a.mul(other.at(k, j)));
                    *out.at_mut(i, j) = v;
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for (j, x) in v.iter().enumerate() {
                    if !x.is_zero() {
                        acc = acc.add(&self.at(i, j).mul(x));
                    }
                }
                acc
            })
            .collect()
    }

    /// Solve M x = b; None when inconsistent. Free variables are set to zero,
    /// which makes the solution deterministic.
    pub fn solve(&self, b: &[T]) -> Option<Vec<T>> {
        assert_eq!(b.len(), self.rows);
        let mut aug: Matrix<T> = Matrix::zero(self.rows, self.cols + 1);
        for (r, rhs) in b.iter().enumerate() {
            for c in 0..self.cols {
                *aug.at_mut(r, c) = self.at(r, c).clone();
            }
            *aug.at_mut(r, self.cols) = rhs.clone();
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // pivot in the augmented column
        }
        let mut x = vec![T::zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.at(r, self.cols).clone();
        }
        Some(x)
    }

    /// Determinant by elimination (entries form a field).
    pub fn det(&self) -> T {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let mut det = T::one();
        for c in 0..m.cols {
            let Some(p) = (c..m.rows).find(|&i| !m.at(i, c).is_zero()) else {
                return T::zero();
            };
            if p != c {
                m.swap_rows(c, p);
                det = det.neg();
            }
            det = det.mul(m.at(c, c));
            let inv = T::one().div(m.at(c, c));
            for i in c + 1..m.rows {
                if m.at(i, c).is_zero() {
                    continue;
                }
                let f = m.at(i, c).mul(&inv);
                for j in c..m.cols {
                    let v = m.at(i, j).sub(&f.mul(m.at(c, j)));
                    *m.at_mut(i, j) = v;
                }
            }
        }
        det
    }
}

// ---------------------------------------------------------------------------
// Row-space (subspace) helpers over the rationals
// ---------------------------------------------------------------------------

pub fn span_rank(rows: &[Vec<Rational>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    Matrix::from_rows(rows.to_vec()).rank()
}

/// Equality of the row spans.
pub fn same_span(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> bool {
    let ra = span_rank(a);
    let rb = span_rank(b);
    if ra != rb {
        return false;
    }
    let mut all: Vec<Vec<Rational>> = a.to_vec();
    all.extend(b.to_vec());
    span_rank(&all) == ra
}

/// dim(span a ∩ span b) = rank a + rank b - rank(a ∪ b).
pub fn intersection_dim(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> usize {
    let ra = span_rank(a);
    let rb = span_rank(b);
    let mut all: Vec<Vec<Rational>> = a.to_vec();
    all.extend(b.to_vec());
    ra + rb - span_rank(&all)
}

pub fn in_span(v: &[Rational], rows: &[Vec<Rational>]) -> bool {
    if v.iter().all(Zero::is_zero) {
        return true;
    }
    let r = span_rank(rows);
    let mut all = rows.to_vec();
    all.push(v.to_vec());
    span_rank(&all) == r
}

// ---------------------------------------------------------------------------
// Characteristic polynomial over the rationals
// ---------------------------------------------------------------------------

/// det(tI - M), monic of degree n, by similarity reduction to upper
/// Hessenberg form followed by the principal-minor recurrence.
pub fn char_poly(m: &Matrix<Rational>) -> Poly1 {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    if n == 0 {
        return Poly1::one();
    }
    let mut h = m.clone();
    // Hessenberg reduction with exact similarity transforms.
    for j in 0..n.saturating_sub(2) {
        let Some(p) = (j + 1..n).find(|&i| !Zero::is_zero(h.at(i, j))) else {
            continue;
        };
        if p != j + 1 {
            h.swap_rows(j + 1, p);
            // matching column swap keeps similarity
            for r in 0..n {
                let a = h.at(r, j + 1).clone();
                let b = h.at(r, p).clone();
                *h.at_mut(r, j + 1) = b;
                *h.at_mut(r, p) = a;
            }
        }
        let pivot_inv = h.at(j + 1, j).recip();
        for i in j + 2..n {
            if Zero::is_zero(h.at(i, j)) {
                continue;
            }
            let f = h.at(i, j) * &pivot_inv;
            // row_i -= f * row_{j+1}
            for c in 0..n {
                let v = h.at(i, c) - &f * h.at(j + 1, c);
                *h.at_mut(i, c) = v;
            }
            // col_{j+1} += f * col_i
            for r in 0..n {
                let v = h.at(r, j + 1) + &f * h.at(r, i);
                *h.at_mut(r, j + 1) = v;
            }
        }
    }
    // p_k = (t - h_kk) p_{k-1} - Σ_m h_{m,k} (Π_{j=m..k-1} h_{j+1,j}) p_{m-1}
    let mut ps: Vec<Poly1> = vec![Poly1::one()];
    for k in 1..=n {
        let t_minus = Poly1::from_coeffs(vec![-h.at(k - 1, k - 1).clone(), <Rational as One>::one()]);
        let mut p = t_minus.mul(&ps[k - 1]);
        let mut sub_prod = <Rational as One>::one();
        for m in (1..k).rev() {
            sub_prod *= h.at(m, m - 1);
            if Zero::is_zero(&sub_prod) {
                break;
            }
            let coef = h.at(m - 1, k - 1) * &sub_prod;
            p = p.sub(&ps[m - 1].scale(&coef));
        }
        ps.push(p);
    }
    ps.pop().unwrap()
}
