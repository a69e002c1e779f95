//! Text grammar for noncommutative expressions and its elaboration into
//! normal-form elements or truncated series.
//!
//! Grammar (whitespace-insensitive, juxtaposition is product):
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := factor (factor | "*" factor)*
//! factor := atom ("^" signed-int)?
//! atom   := rational | symbol | "-" atom | "(" expr ")"
//! ```
//!
//! Rational literals are "p" or "p/q"; no floating point. The generator
//! alphabet depends on the context: A1 and the quantum Weyl algebra use
//! {x, d} ("d" stands for ∂), the quantum plane {x, y}, the skew Laurent
//! rings {H, X} or {H, C, X}, the pseudo-differential ring {x, t}. Negative
//! exponents are accepted only on the invertible generators X, H and t.

use std::fmt;

use num::traits::Zero;

use crate::field::poly::Poly1;
use crate::field::rat::{parse_rational, Rational};
use crate::field::ratfunc::{RatFunc, VarSet};
use crate::series::{RingTag, SeriesError, TruncatedSeries};
use crate::weyl::{AlgebraPresentation, WeylError, WeylLikeElement};

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum ParseError {
    #[error("lexical error at byte {pos}: {msg}")]
    Lex { pos: usize, msg: String },
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown symbol '{sym}' for this context at byte {pos}")]
    UnknownSymbol { sym: char, pos: usize },
    #[error("malformed exponent at byte {pos}: {msg}")]
    BadExponent { pos: usize, msg: String },
    #[error("negative power of non-invertible subexpression (only X, H, t admit one)")]
    NegativePower,
    #[error("algebra error during elaboration: {0}")]
    Weyl(#[from] WeylError),
    #[error("series error during elaboration: {0}")]
    Series(#[from] SeriesError),
}

// ---------------------------------------------------------------------------
// Expressions
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Rational(Rational),
    Symbol(char),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    /// Noncommutative product, left-associative.
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

/// What an expression elaborates into.
#[derive(Clone, Debug)]
pub enum ExprContext {
    Algebra(AlgebraPresentation),
    Ring(RingTag, u32),
}

impl ExprContext {
    pub fn alphabet(&self) -> Vec<char> {
        match self {
            ExprContext::Algebra(AlgebraPresentation::QuantumPlane(_)) => vec!['x', 'y'],
            ExprContext::Algebra(_) => vec!['x', 'd'],
            ExprContext::Ring(ring, _) => match ring.vars() {
                VarSet::H => vec!['H', 'X'],
                VarSet::HC => vec!['H', 'C', 'X'],
                _ => vec!['x', 't'],
            },
        }
    }
}

#[derive(Clone, Debug)]
pub enum Elaborated {
    Weyl(WeylLikeElement),
    Series(TruncatedSeries),
}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rational),
    Sym(char),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn lex(input: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes: Vec<char> = input.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let pos = i;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
            }
            '+' => {
                toks.push((Tok::Plus, pos));
                i += 1;
            }
            '-' => {
                toks.push((Tok::Minus, pos));
                i += 1;
            }
            '*' => {
                toks.push((Tok::Star, pos));
                i += 1;
            }
            '^' => {
                toks.push((Tok::Caret, pos));
                i += 1;
            }
            '(' => {
                toks.push((Tok::LParen, pos));
                i += 1;
            }
            ')' => {
                toks.push((Tok::RParen, pos));
                i += 1;
            }
            '0'..='9' => {
                let mut j = i;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                // "p/q" is one rational literal when digits follow the slash
                let mut text: String = bytes[i..j].iter().collect();
                if j < bytes.len() && bytes[j] == '/' {
                    let mut k = j + 1;
                    while k < bytes.len() && bytes[k].is_ascii_digit() {
                        k += 1;
                    }
                    if k == j + 1 {
                        return Err(ParseError::Lex {
                            pos: j,
                            msg: "expected digits after '/'".into(),
                        });
                    }
                    text = bytes[i..k].iter().collect();
                    j = k;
                }
                let r = parse_rational(&text).ok_or_else(|| ParseError::Lex {
                    pos,
                    msg: format!("bad rational literal '{}'", text),
                })?;
                toks.push((Tok::Num(r), pos));
                i = j;
            }
            c if c.is_ascii_alphabetic() => {
                toks.push((Tok::Sym(c), pos));
                i += 1;
            }
            other => {
                return Err(ParseError::Lex {
                    pos,
                    msg: format!("unexpected character '{}'", other),
                });
            }
        }
    }
    Ok(toks)
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

struct Parser<'a> {
    toks: &'a [(Tok, usize)],
    at: usize,
    alphabet: &'a [char],
    input_len: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.toks
            .get(self.at)
            .map(|(_, p)| *p)
            .unwrap_or(self.input_len)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(t, _)| t.clone());
        self.at += 1;
        t
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    let rhs = self.term()?;
                    lhs = Expr::Add(Box::new(lhs), Box::new(rhs));
                }
                Some(Tok::Minus) => {
                    self.bump();
                    let rhs = self.term()?;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    let rhs = self.factor()?;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(rhs));
                }
                // juxtaposition
                Some(Tok::Num(_)) | Some(Tok::Sym(_)) | Some(Tok::LParen) => {
                    let rhs = self.factor()?;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.bump();
            let pos = self.pos();
            let mut neg = false;
            if matches!(self.peek(), Some(Tok::Minus)) {
                self.bump();
                neg = true;
            }
            match self.bump() {
                Some(Tok::Num(r)) => {
                    if !r.is_integer() {
                        return Err(ParseError::BadExponent {
                            pos,
                            msg: "exponent must be an integer".into(),
                        });
                    }
                    let mut e: i64 =
                        r.to_integer().try_into().map_err(|_| ParseError::BadExponent {
                            pos,
                            msg: "exponent out of range".into(),
                        })?;
                    if neg {
                        e = -e;
                    }
                    Ok(Expr::Pow(Box::new(base), e))
                }
                _ => Err(ParseError::BadExponent {
                    pos,
                    msg: "expected an integer after '^'".into(),
                }),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Num(r)) => Ok(Expr::Rational(r)),
            Some(Tok::Sym(s)) => {
                if !self.alphabet.contains(&s) {
                    return Err(ParseError::UnknownSymbol { sym: s, pos });
                }
                Ok(Expr::Symbol(s))
            }
            Some(Tok::Minus) => {
                let inner = self.atom_or_factor()?;
                Ok(Expr::Neg(Box::new(inner)))
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(ParseError::Syntax {
                        pos,
                        msg: "unclosed parenthesis".into(),
                    }),
                }
            }
            other => Err(ParseError::Syntax {
                pos,
                msg: format!("expected an atom, found {:?}", other),
            }),
        }
    }

    // unary minus binds to a whole factor so "-x^2" reads -(x^2)
    fn atom_or_factor(&mut self) -> Result<Expr, ParseError> {
        self.factor()
    }
}

/// Parse an expression against a context's generator alphabet.
pub fn parse(input: &str, context: &ExprContext) -> Result<Expr, ParseError> {
    let alphabet = context.alphabet();
    parse_with_alphabet(input, &alphabet)
}

pub fn parse_with_alphabet(input: &str, alphabet: &[char]) -> Result<Expr, ParseError> {
    let toks = lex(input)?;
    let mut p = Parser {
        toks: &toks,
        at: 0,
        alphabet,
        input_len: input.len(),
    };
    let e = p.expr()?;
    if p.at != toks.len() {
        return Err(ParseError::Syntax {
            pos: p.pos(),
            msg: "trailing input".into(),
        });
    }
    Ok(e)
}

// ---------------------------------------------------------------------------
// Elaboration
// ---------------------------------------------------------------------------

pub fn elaborate(e: &Expr, context: &ExprContext) -> Result<Elaborated, ParseError> {
    match context {
        ExprContext::Algebra(pres) => Ok(Elaborated::Weyl(elaborate_weyl(e, pres)?)),
        ExprContext::Ring(ring, window) => {
            Ok(Elaborated::Series(elaborate_series(e, ring, *window)?))
        }
    }
}

pub fn elaborate_weyl(
    e: &Expr,
    pres: &AlgebraPresentation,
) -> Result<WeylLikeElement, ParseError> {
    match e {
        Expr::Rational(r) => Ok(WeylLikeElement::scalar(pres.clone(), r.clone())),
        Expr::Symbol('x') => Ok(WeylLikeElement::gen_x(pres.clone())),
        Expr::Symbol(_) => Ok(WeylLikeElement::gen_d(pres.clone())), // d or y
        Expr::Neg(inner) => Ok(elaborate_weyl(inner, pres)?.neg()),
        Expr::Add(a, b) => Ok(elaborate_weyl(a, pres)?.add(&elaborate_weyl(b, pres)?)?),
        Expr::Sub(a, b) => Ok(elaborate_weyl(a, pres)?.sub(&elaborate_weyl(b, pres)?)?),
        Expr::Mul(a, b) => Ok(elaborate_weyl(a, pres)?.mul(&elaborate_weyl(b, pres)?)?),
        Expr::Pow(base, k) => {
            if *k < 0 {
                return Err(ParseError::NegativePower);
            }
            Ok(elaborate_weyl(base, pres)?.pow(*k as u32)?)
        }
    }
}

pub fn elaborate_series(
    e: &Expr,
    ring: &RingTag,
    window: u32,
) -> Result<TruncatedSeries, ParseError> {
    match e {
        Expr::Rational(r) => Ok(TruncatedSeries::scalar(
            ring.clone(),
            RatFunc::constant(r.clone(), ring.vars()),
            window,
        )),
        Expr::Symbol(s) => symbol_series(*s, ring, window),
        Expr::Neg(inner) => Ok(elaborate_series(inner, ring, window)?.neg()),
        Expr::Add(a, b) => {
            Ok(elaborate_series(a, ring, window)?.add(&elaborate_series(b, ring, window)?)?)
        }
        Expr::Sub(a, b) => {
            Ok(elaborate_series(a, ring, window)?.sub(&elaborate_series(b, ring, window)?)?)
        }
        Expr::Mul(a, b) => {
            Ok(elaborate_series(a, ring, window)?.mul(&elaborate_series(b, ring, window)?)?)
        }
        Expr::Pow(base, k) => {
            if *k < 0 && !matches!(**base, Expr::Symbol('X') | Expr::Symbol('H') | Expr::Symbol('t'))
            {
                return Err(ParseError::NegativePower);
            }
            Ok(elaborate_series(base, ring, window)?.pow(*k)?)
        }
    }
}

fn symbol_series(s: char, ring: &RingTag, window: u32) -> Result<TruncatedSeries, ParseError> {
    let out = match s {
        'X' | 't' => TruncatedSeries::gen(ring.clone(), window),
        'H' => TruncatedSeries::scalar(ring.clone(), RatFunc::var_h(ring.vars()), window),
        'C' => TruncatedSeries::scalar(ring.clone(), RatFunc::var_c(), window),
        'x' => TruncatedSeries::scalar(ring.clone(), RatFunc::var_x(), window),
        other => {
            return Err(ParseError::UnknownSymbol {
                sym: other,
                pos: 0,
            })
        }
    };
    Ok(out)
}

/// Parse a univariate polynomial in t (for the f(t) arguments).
pub fn parse_poly1(input: &str) -> Result<Poly1, ParseError> {
    let e = parse_with_alphabet(input, &['t'])?;
    eval_poly1(&e)
}

fn eval_poly1(e: &Expr) -> Result<Poly1, ParseError> {
    match e {
        Expr::Rational(r) => Ok(Poly1::constant(r.clone())),
        Expr::Symbol(_) => Ok(Poly1::monomial(Rational::from_integer(1.into()), 1)),
        Expr::Neg(i) => Ok(eval_poly1(i)?.neg()),
        Expr::Add(a, b) => Ok(eval_poly1(a)?.add(&eval_poly1(b)?)),
        Expr::Sub(a, b) => Ok(eval_poly1(a)?.sub(&eval_poly1(b)?)),
        Expr::Mul(a, b) => Ok(eval_poly1(a)?.mul(&eval_poly1(b)?)),
        Expr::Pow(base, k) => {
            if *k < 0 {
                return Err(ParseError::NegativePower);
            }
            let b = eval_poly1(base)?;
            let mut acc = Poly1::one();
            for _ in 0..*k {
                acc = acc.mul(&b);
            }
            Ok(acc)
        }
    }
}

// ---------------------------------------------------------------------------
// Printing in the input grammar
// ---------------------------------------------------------------------------

/// Print a normal-form element in the grammar (the Display form already is).
pub fn print_weyl(e: &WeylLikeElement) -> String {
    format!("{}", e)
}

/// Print a series in the grammar. Coefficients must be Laurent in H (and
/// polynomial in C): a non-monomial denominator has no grammar form and
/// yields None.
pub fn print_series(s: &TruncatedSeries) -> Option<String> {
    use crate::field::rat::format_rational;
    if s.terms().count() == 0 {
        return Some("0".to_string());
    }
    let g = s.ring().gen_name();
    let (v1, v2) = s.ring().vars().var_names();
    struct Part {
        neg: bool,
        body: String,
    }
    let mut parts: Vec<Part> = Vec::new();
    for (e, c) in s.terms().collect::<Vec<_>>().into_iter().rev() {
        let den = c.den();
        let mut den_terms = den.terms();
        let (dexp, dcoef) = den_terms.next()?;
        if den_terms.next().is_some() || !num::traits::One::is_one(dcoef) {
            return None; // non-monomial denominator
        }
        for (nexp, ncoef) in c.num().terms() {
            let p1 = nexp.0 as i64 - dexp.0 as i64;
            let p2 = nexp.1 as i64 - dexp.1 as i64;
            let neg = ncoef < &Rational::zero();
            let mag = if neg { -ncoef.clone() } else { ncoef.clone() };
            let mut factors: Vec<String> = Vec::new();
            let trivial_monomial = p1 == 0 && p2 == 0 && *e == 0;
            if !num::traits::One::is_one(&mag) || trivial_monomial {
                factors.push(format_rational(&mag));
            }
            for (name, pw) in [(v1, p1), (v2, p2)] {
                if pw == 1 {
                    factors.push(name.to_string());
                } else if pw != 0 {
                    factors.push(format!("{}^{}", name, pw));
                }
            }
            if *e == 1 {
                factors.push(g.to_string());
            } else if *e != 0 {
                factors.push(format!("{}^{}", g, e));
            }
            parts.push(Part {
                neg,
                body: factors.join("*"),
            });
        }
    }
    let mut out = String::new();
    for (i, p) in parts.iter().enumerate() {
        if i == 0 {
            if p.neg {
                out.push('-');
            }
        } else {
            out.push_str(if p.neg { " - " } else { " + " });
        }
        out.push_str(&p.body);
    }
    Some(out)
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Rational(r) => write!(f, "{}", crate::field::rat::format_rational(r)),
            Expr::Symbol(s) => write!(f, "{}", s),
            Expr::Neg(i) => write!(f, "-({})", i),
            Expr::Add(a, b) => write!(f, "({} + {})", a, b),
            Expr::Sub(a, b) => write!(f, "({} - {})", a, b),
            Expr::Mul(a, b) => write!(f, "({}*{})", a, b),
            Expr::Pow(b, k) => write!(f, "({})^{}", b, k),
        }
    }
}
