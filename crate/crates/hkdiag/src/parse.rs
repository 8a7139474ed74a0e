//! Polynomial expressions over Q.
//!
//! ```text
//! expr   = ["+" | "-"] term { ("+" | "-") term }
//! term   = factor { ("*" | "/") factor }
//! factor = ("+" | "-") factor | atom [ "^" integer ]
//! atom   = integer | variable | "(" expr ")"
//! ```
//!
//! Division is only allowed by a nonzero constant, so `3/4*x` and `(x+1)/2`
//! parse but `1/x` does not.

use std::collections::BTreeMap;
use std::ops::Neg;

use hkdiag_core::poly::Bipoly;
use hkdiag_core::Rational;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at column {column} in `{source_text}`")]
pub struct ParseError {
    pub message: String,
    /// 1-based character position.
    pub column: usize,
    pub source_text: String,
}

/// Sparse polynomial keyed by exponent vectors (one entry per variable).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl Poly {
    fn constant(nvars: usize, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; nvars], c);
        }
        Poly { nvars, terms }
    }

    fn variable(nvars: usize, index: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        Poly { nvars, terms: BTreeMap::from([(e, Rational::one())]) }
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Rational> {
        &self.terms
    }

    fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&vec![0; self.nvars]).cloned(),
            _ => None,
        }
    }

    fn add(mut self, rhs: Poly) -> Poly {
        for (e, c) in rhs.terms {
            let entry = self.terms.entry(e).or_insert_with(Rational::zero);
            *entry += c;
        }
        self.terms.retain(|_, c| !c.is_zero());
        self
    }

    fn mul(&self, rhs: &Poly) -> Poly {
        let mut out = Poly::constant(self.nvars, Rational::zero());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                let entry = out.terms.entry(e).or_insert_with(Rational::zero);
                *entry += ca * cb;
            }
        }
        out.terms.retain(|_, c| !c.is_zero());
        out
    }

    fn scale(mut self, c: &Rational) -> Poly {
        for v in self.terms.values_mut() {
            *v *= c;
        }
        self.terms.retain(|_, c| !c.is_zero());
        self
    }

    /// Two-variable polynomial as a [`Bipoly`] with rows indexed by the first variable.
    pub fn to_bipoly(&self) -> Bipoly {
        assert_eq!(self.nvars, 2);
        Bipoly::from_terms(self.terms.iter().map(|(e, c)| (e[0] as usize, e[1] as usize, c.clone())))
    }

    /// Dense coefficients of a one-variable polynomial, lowest degree first.
    pub fn to_dense(&self) -> Vec<Rational> {
        assert_eq!(self.nvars, 1);
        let len = self.terms.keys().map(|e| e[0] as usize + 1).max().unwrap_or(0);
        let mut out = vec![Rational::zero(); len];
        for (e, c) in &self.terms {
            out[e[0] as usize] = c.clone();
        }
        out
    }
}

impl Neg for Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        self.scale(&-Rational::one())
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

struct Parser<'a> {
    source: &'a str,
    vars: &'a [&'a str],
    tokens: Vec<(usize, Token)>,
    pos: usize,
}

fn tokenize(source: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let chars: Vec<char> = source.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push((start, Token::Int(digits.parse().unwrap())));
        } else if c.is_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((start, Token::Ident(chars[start..i].iter().collect())));
        } else if "+-*/^()".contains(c) {
            out.push((start, Token::Sym(c)));
            i += 1;
        } else if c == '−' {
            out.push((start, Token::Sym('-')));
            i += 1;
        } else {
            return Err(error(source, start, format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

fn error(source: &str, index: usize, message: String) -> ParseError {
    ParseError { message, column: index + 1, source_text: source.to_string() }
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.source.chars().count(), |(i, _)| *i)
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(error(self.source, self.here(), message.into()))
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Token::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let negate = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let first = self.term()?;
        let mut acc = if negate { -first } else { first };
        loop {
            if self.eat('+') {
                acc = acc.add(self.term()?);
            } else if self.eat('-') {
                acc = acc.add(-self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.factor()?);
            } else if self.peek() == Some(&Token::Sym('/')) {
                let at = self.here();
                self.pos += 1;
                let divisor = self.factor()?;
                match divisor.as_constant() {
                    Some(c) if !c.is_zero() => acc = acc.scale(&c.recip()),
                    Some(_) => return Err(error(self.source, at, "division by zero".into())),
                    None => return Err(error(self.source, at, "can only divide by a constant".into())),
                }
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Poly, ParseError> {
        if self.eat('-') {
            return Ok(-self.factor()?);
        }
        if self.eat('+') {
            return self.factor();
        }
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let exponent = match self.peek() {
            Some(Token::Int(n)) => u32::try_from(n.clone()).ok(),
            _ => return self.fail("expected a nonnegative integer exponent"),
        };
        let Some(exponent) = exponent.filter(|&e| e <= 1000) else {
            return self.fail("exponent too large");
        };
        self.pos += 1;
        let mut out = Poly::constant(base.nvars, Rational::one());
        for _ in 0..exponent {
            out = out.mul(&base);
        }
        Ok(out)
    }

    fn atom(&mut self) -> Result<Poly, ParseError> {
        let nvars = self.vars.len();
        match self.peek().cloned() {
            Some(Token::Int(n)) => {
                self.pos += 1;
                Ok(Poly::constant(nvars, Rational::from_integer(n)))
            }
            Some(Token::Ident(name)) => match self.vars.iter().position(|v| *v == name) {
                Some(i) => {
                    self.pos += 1;
                    Ok(Poly::variable(nvars, i))
                }
                None => self.fail(format!("unknown variable '{name}' (expected one of {})", self.vars.join(", "))),
            },
            Some(Token::Sym('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return self.fail("expected ')'");
                }
                Ok(inner)
            }
            Some(Token::Sym(c)) => self.fail(format!("unexpected '{c}'")),
            None => self.fail("unexpected end of input"),
        }
    }
}

/// Parses `source` as a polynomial in `vars`.
pub fn parse_poly(source: &str, vars: &[&str]) -> Result<Poly, ParseError> {
    let tokens = tokenize(source)?;
    let mut p = Parser { source, vars, tokens, pos: 0 };
    if p.tokens.is_empty() {
        return p.fail("empty expression");
    }
    let out = p.expr()?;
    if p.pos < p.tokens.len() {
        return p.fail("unexpected trailing input");
    }
    Ok(out)
}

/// A polynomial in `x` and `y`, rows indexed by the power of `x`.
pub fn parse_xy(source: &str) -> Result<Bipoly, ParseError> {
    parse_poly(source, &["x", "y"]).map(|p| p.to_bipoly())
}

/// A polynomial in `t` and `z`, rows indexed by the power of `t`.
pub fn parse_tz(source: &str) -> Result<Bipoly, ParseError> {
    parse_poly(source, &["t", "z"]).map(|p| p.to_bipoly())
}

/// A single rational literal `p`, `-p` or `p/q`.
pub fn parse_rational(source: &str) -> Result<Rational, ParseError> {
    let s = source.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let bad = || error(source, 0, format!("not a rational number: '{s}'"));
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(error(source, 0, "zero denominator".into()));
    }
    Ok(Rational::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use hkdiag_core::scalar::{int, rat};

    #[test]
    fn instance_denominator() {
        let d = parse_xy("1 - x - x^2 + x^3 - y").unwrap();
        assert_eq!(d, Bipoly::from_int_terms(&[(0, 0, 1), (1, 0, -1), (2, 0, -1), (3, 0, 1), (0, 1, -1)]));
        let n = parse_xy("(1+x)*(1-x)^2").unwrap();
        assert_eq!(n, Bipoly::from_int_terms(&[(0, 0, 1), (1, 0, -1), (2, 0, -1), (3, 0, 1)]));
    }

    #[test]
    fn rationals_and_signs() {
        let p = parse_poly("-3/4*m + (m+1)/2 - -1", &["m"]).unwrap();
        assert_eq!(p.to_dense(), vec![rat(3, 2), rat(-1, 4)]);
        assert_eq!(parse_poly("2^10", &["m"]).unwrap().to_dense(), vec![int(1024)]);
        assert!(parse_poly("0", &["m"]).unwrap().to_dense().is_empty());
    }

    #[test]
    fn whitespace_is_ignored() {
        assert_eq!(parse_xy(" 1-x*y ").unwrap(), parse_xy("1 - x * y").unwrap());
    }

    #[test]
    fn errors_carry_position() {
        let e = parse_xy("1 + q").unwrap_err();
        assert_eq!(e.column, 5);
        assert!(parse_xy("1/x").unwrap_err().message.contains("constant"));
        assert!(parse_xy("(1+x").is_err());
        assert!(parse_xy("x^-1").is_err());
        assert!(parse_xy("2 x").is_err());
        assert!(parse_xy("").is_err());
        assert!(parse_xy("1/0").is_err());
    }

    #[test]
    fn rational_literals() {
        assert_eq!(parse_rational("-6/4").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational(" 17 ").unwrap(), int(17));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
