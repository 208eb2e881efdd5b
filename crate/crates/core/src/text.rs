//! Text forms of scalars and polynomials.
//!
//! A scalar is written `v:l` with `v` an integer, decimal or `p/q` rational
//! and `l` a rational or `inf`; a bare `v` means layer 1. A polynomial is a
//! sum of terms `v:l*x^e`, where the coefficient defaults to `0:1`, the `*`
//! and `^1` are optional, and multivariate terms use `x1 … xn` (with `x` an
//! alias of `x1`) and may carry rational exponents such as `x2^-1/2`.
//! The zero polynomial is written `_`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::layermap::{Exponent, MultiPoly};
use crate::poly::LayeredPoly;
use crate::scalar::LayeredScalar;
use crate::sort::Layer;
use crate::Rational;

struct Cursor {
    chars: Vec<(usize, char)>,
    at: usize,
    end: usize,
}

impl Cursor {
    fn new(text: &str, offset: usize) -> Self {
        Cursor {
            chars: text
                .char_indices()
                .filter(|(_, c)| !c.is_whitespace())
                .map(|(i, c)| (i + offset, c))
                .collect(),
            at: 0,
            end: offset + text.len(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).map(|(_, c)| *c)
    }

    fn pos(&self) -> usize {
        self.chars.get(self.at).map_or(self.end, |(i, _)| *i)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn done(&self) -> bool {
        self.at >= self.chars.len()
    }

    fn fail<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::parse(self.pos(), msg))
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.at;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.at += 1;
        }
        (self.at > start).then(|| self.chars[start..self.at].iter().map(|(_, c)| c).collect())
    }

    fn rational(&mut self, allow_decimal: bool) -> Result<Rational> {
        let negative = self.eat('-');
        let Some(int) = self.digits() else {
            return self.fail("expected a number");
        };
        let int: BigInt = int.parse().expect("ascii digits");
        let r = if self.eat('/') {
            let pos = self.pos();
            let Some(den) = self.digits() else {
                return self.fail("expected a denominator");
            };
            let den: BigInt = den.parse().expect("ascii digits");
            if den.is_zero() {
                return Err(Error::parse(pos, "zero denominator"));
            }
            Rational::new(int, den)
        } else if allow_decimal && self.eat('.') {
            let Some(frac) = self.digits() else {
                return self.fail("expected digits after the decimal point");
            };
            let scale = num_traits::pow(BigInt::from(10), frac.len());
            let frac: BigInt = frac.parse().expect("ascii digits");
            Rational::new(int * &scale + frac, scale)
        } else {
            Rational::from_integer(int)
        };
        Ok(if negative { -r } else { r })
    }

    fn layer(&mut self) -> Result<Layer> {
        if self.peek() == Some('i') {
            for c in "inf".chars() {
                if !self.eat(c) {
                    return self.fail("expected `inf`");
                }
            }
            return Ok(Layer::Infinite);
        }
        if self.eat('∞') {
            return Ok(Layer::Infinite);
        }
        Ok(Layer::Finite(self.rational(true)?))
    }

    fn scalar(&mut self) -> Result<LayeredScalar> {
        let value = self.rational(true)?;
        let layer = if self.eat(':') {
            self.layer()?
        } else {
            Layer::one()
        };
        Ok(LayeredScalar::new(value, layer))
    }

    /// `x`, `x3`, followed by an optional `^exp`; returns a 1-based index.
    fn variable(&mut self) -> Result<(usize, Rational)> {
        if !self.eat('x') {
            return self.fail("expected a variable");
        }
        let pos = self.pos();
        let index = match self.digits() {
            None => 1,
            Some(d) => match d.parse::<usize>() {
                Ok(i) if i >= 1 => i,
                _ => return Err(Error::parse(pos, "variable index must be at least 1")),
            },
        };
        let exp = if self.eat('^') {
            if self.eat('(') {
                let e = self.rational(false)?;
                if !self.eat(')') {
                    return self.fail("expected `)`");
                }
                e
            } else {
                self.rational(false)?
            }
        } else {
            Rational::one()
        };
        Ok((index, exp))
    }
}

pub fn parse_rational(text: &str) -> Result<Rational> {
    let mut c = Cursor::new(text, 0);
    let r = c.rational(true)?;
    finish(&c, r)
}

pub fn parse_layer(text: &str) -> Result<Layer> {
    let mut c = Cursor::new(text, 0);
    let l = c.layer()?;
    finish(&c, l)
}

pub fn parse_scalar(text: &str) -> Result<LayeredScalar> {
    let mut c = Cursor::new(text, 0);
    let x = c.scalar()?;
    finish(&c, x)
}

fn finish<T>(c: &Cursor, x: T) -> Result<T> {
    if c.done() {
        Ok(x)
    } else {
        c.fail("unexpected trailing input")
    }
}

struct Term {
    pos: usize,
    coeff: LayeredScalar,
    vars: BTreeMap<usize, Rational>,
}

fn parse_terms(text: &str) -> Result<Option<Vec<Term>>> {
    if text.trim() == "_" {
        return Ok(None);
    }
    let mut terms = Vec::new();
    let mut offset = 0;
    for piece in text.split('+') {
        let mut c = Cursor::new(piece, offset);
        let pos = c.pos();
        offset += piece.len() + 1;
        if c.done() {
            return Err(Error::parse(pos, "empty term"));
        }
        let coeff = if c.peek() == Some('x') {
            LayeredScalar::one()
        } else {
            let x = c.scalar()?;
            if c.eat('*') && c.done() {
                return c.fail("expected a variable");
            }
            x
        };
        let mut vars: BTreeMap<usize, Rational> = BTreeMap::new();
        while !c.done() {
            let (i, e) = c.variable()?;
            *vars.entry(i).or_insert_with(Rational::zero) += e;
            if !c.done() && !c.eat('*') {
                return c.fail("expected `*` or `+`");
            }
            if c.done() && c.chars.last().is_some_and(|(_, ch)| *ch == '*') {
                return c.fail("expected a variable");
            }
        }
        vars.retain(|_, e| !e.is_zero());
        terms.push(Term { pos, coeff, vars });
    }
    Ok(Some(terms))
}

/// Parses a univariate polynomial in `x`.
pub fn parse_poly(text: &str) -> Result<LayeredPoly> {
    let Some(terms) = parse_terms(text)? else {
        return Ok(LayeredPoly::zero());
    };
    let mut out = BTreeMap::new();
    for t in terms {
        let exp = match t.vars.iter().next() {
            None => 0,
            Some((1, e)) if t.vars.len() == 1 && e.is_integer() && e.is_positive() => e
                .to_integer()
                .try_into()
                .map_err(|_| Error::parse(t.pos, "exponent too large"))?,
            Some((1, _)) if t.vars.len() == 1 => {
                return Err(Error::parse(
                    t.pos,
                    "exponents must be non-negative integers",
                ))
            }
            _ => {
                return Err(Error::parse(
                    t.pos,
                    "univariate polynomials use the variable `x`",
                ))
            }
        };
        if out.insert(exp, t.coeff).is_some() {
            return Err(Error::parse(
                t.pos,
                format!("repeated monomial of degree {exp}"),
            ));
        }
    }
    Ok(LayeredPoly::from_terms(out))
}

/// Parses a multivariate polynomial. The arity is the largest variable index
/// used, or `arity` when given (which must not be smaller).
pub fn parse_multi(text: &str, arity: Option<usize>) -> Result<MultiPoly> {
    let terms = parse_terms(text)?.unwrap_or_default();
    let used = terms
        .iter()
        .filter_map(|t| t.vars.keys().next_back().copied())
        .max()
        .unwrap_or(0);
    let n = match arity {
        Some(n) if n < used => {
            return Err(Error::ArityMismatch {
                expected: n,
                got: used,
            })
        }
        Some(n) => n,
        None => used.max(1),
    };
    let mut out: BTreeMap<Exponent, LayeredScalar> = BTreeMap::new();
    for t in terms {
        let mut e = vec![Rational::zero(); n];
        for (i, k) in t.vars {
            e[i - 1] = k;
        }
        if out.insert(e, t.coeff).is_some() {
            return Err(Error::parse(t.pos, "repeated monomial"));
        }
    }
    MultiPoly::from_terms(n, out)
}

pub fn format_scalar(x: &LayeredScalar) -> String {
    x.to_string()
}

fn power(var: &str, e: &Rational) -> String {
    if e.is_one() {
        var.to_string()
    } else if e.is_integer() && e.is_positive() {
        format!("{var}^{e}")
    } else {
        format!("{var}^({e})")
    }
}

fn term(coeff: &LayeredScalar, monomial: String) -> String {
    match (monomial.is_empty(), coeff.is_one()) {
        (true, _) => format_scalar(coeff),
        (false, true) => monomial,
        (false, false) => format!("{coeff}*{monomial}"),
    }
}

/// Descending exponents, joined by ` + `.
pub fn format_poly(f: &LayeredPoly) -> String {
    if f.is_zero() {
        return "_".to_string();
    }
    f.terms()
        .rev()
        .map(|(e, c)| {
            let mono = if e == 0 {
                String::new()
            } else {
                power("x", &Rational::from_integer(e.into()))
            };
            term(c, mono)
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

pub fn format_multi(f: &MultiPoly) -> String {
    if f.is_zero() {
        return "_".to_string();
    }
    let mut terms: Vec<_> = f.terms().collect();
    terms.reverse();
    terms
        .into_iter()
        .map(|(e, c)| {
            let mono = e
                .iter()
                .enumerate()
                .filter(|(_, k)| !k.is_zero())
                .map(|(i, k)| power(&format!("x{}", i + 1), k))
                .collect::<Vec<_>>()
                .join("*");
            term(c, mono)
        })
        .collect::<Vec<_>>()
        .join(" + ")
}
