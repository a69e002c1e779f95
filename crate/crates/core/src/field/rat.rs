//! Arbitrary-precision rational scalars, the base field of every ring here.
//!
//! `Rational` is `num::BigRational`, which already keeps the canonical form
//! we need: numerator and denominator coprime, denominator positive, zero
//! stored as 0/1.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};

pub type Rational = BigRational;

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Rational p/q. Panics on q = 0.
pub fn rat(p: i64, q: i64) -> Rational {
    assert!(q != 0, "zero denominator");
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn is_zero(r: &Rational) -> bool {
    r.is_zero()
}

/// Parse "p", "-p" or "p/q" (q > 0 after normalization).
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        Some(BigRational::new(p, q))
    } else {
        let p: BigInt = s.parse().ok()?;
        Some(BigRational::from_integer(p))
    }
}

/// Render as "p" or "p/q"; the form `parse_rational` accepts.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Binomial coefficient C(n, k) for integer n (generalized: n may be negative)
/// and k >= 0, as an exact rational-free integer value.
pub fn binomial(n: i64, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k as i64 {
        acc *= BigInt::from(n - i);
    }
    for i in 1..=k as i64 {
        acc /= BigInt::from(i);
    }
    acc
}

/// k! as a BigInt.
pub fn factorial(k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=k as u64 {
        acc *= BigInt::from(i);
    }
    acc
}

/// λ^n for possibly negative n; λ must be nonzero when n < 0.
pub fn rat_pow(base: &Rational, n: i64) -> Rational {
    if n >= 0 {
        num::pow::pow(base.clone(), n as usize)
    } else {
        assert!(!base.is_zero(), "negative power of zero");
        num::pow::pow(base.recip(), (-n) as usize)
    }
}

/// True when r is one of the rational roots of unity, i.e. r ∈ {1, -1}.
pub fn is_rational_root_of_unity(r: &Rational) -> bool {
    r.abs().is_one()
}
