//! Canonical text syntax for polynomials.
//!
//! Grammar (whitespace insensitive):
//!
//! ```text
//! sum    := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (['*'] factor | '/' number)*
//! factor := atom ['^' integer]
//! atom   := number | rational | ident | '(' sum ')' | '-' factor
//! ```
//!
//! A rational literal is `digits/digits` with no interior whitespace.
//! Printing is deterministic: terms in decreasing degrevlex order, no spaces.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::algebra::coeff::Coefficient;
use crate::algebra::poly::{Poly, RingRef};

/// A syntax error with a character offset into the parsed text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub expected: Vec<String>,
    pub found: String,
    pub message: Option<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(m) = &self.message {
            return write!(f, "{m} (found {})", self.found);
        }
        write!(f, "expected one of {{{}}}, found {}", self.expected.join(", "), self.found)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Rat(BigRational),
    Ident(String),
    Sym(char),
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("`{n}`"),
            Tok::Rat(q) => format!("`{q}`"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Sym(c) => format!("`{c}`"),
            Tok::End => "end of input".to_string(),
        }
    }
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let num: BigInt = chars[start..i].iter().collect::<String>().parse().unwrap();
            if i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit() {
                let dstart = i + 1;
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let den: BigInt = chars[dstart..i].iter().collect::<String>().parse().unwrap();
                if den == BigInt::from(0) {
                    return Err(ParseError {
                        offset: dstart,
                        expected: vec![],
                        found: "`0`".into(),
                        message: Some("zero denominator".into()),
                    });
                }
                out.push((start, Tok::Rat(BigRational::new(num, den))));
            } else {
                out.push((start, Tok::Int(num)));
            }
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            out.push((start, Tok::Ident(chars[start..i].iter().collect())));
        } else if "+-*^()/".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(ParseError {
                offset: i,
                expected: vec!["term".into()],
                found: format!("`{c}`"),
                message: None,
            });
        }
    }
    out.push((chars.len(), Tok::End));
    Ok(out)
}

struct Parser<'r> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    ring: &'r RingRef,
}

impl<'r> Parser<'r> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn err(&self, expected: &[&str]) -> ParseError {
        ParseError {
            offset: self.offset(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().describe(),
            message: None,
        }
    }

    fn coeff(&self, q: &BigRational) -> Result<Poly, ParseError> {
        let c = self.ring.field().from_rational(q).map_err(|e| ParseError {
            offset: self.offset(),
            expected: vec![],
            found: q.to_string(),
            message: Some(e.to_string()),
        })?;
        Ok(Poly::constant(self.ring, c))
    }

    fn sum(&mut self) -> Result<Poly, ParseError> {
        let mut acc = match self.peek() {
            Tok::Sym('-') => {
                self.pos += 1;
                self.term()?.neg()
            }
            Tok::Sym('+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Tok::Sym('+') => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                Tok::Sym('-') => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Tok::Sym('*') => {
                    self.pos += 1;
                    acc = acc * self.factor()?;
                }
                Tok::Sym('/') if matches!(self.peek_at(1), Tok::Int(_) | Tok::Rat(_)) => {
                    self.pos += 1;
                    let q = match self.peek().clone() {
                        Tok::Int(n) => BigRational::from_integer(n),
                        Tok::Rat(q) => q,
                        _ => unreachable!(),
                    };
                    if q == BigRational::from_integer(0.into()) {
                        return Err(ParseError {
                            offset: self.offset(),
                            expected: vec![],
                            found: "`0`".into(),
                            message: Some("division by zero".into()),
                        });
                    }
                    let inv = self.coeff(&q.recip())?;
                    self.pos += 1;
                    acc = acc * inv;
                }
                Tok::Ident(_) | Tok::Sym('(') => {
                    acc = acc * self.factor()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Poly, ParseError> {
        let base = self.atom()?;
        if let Tok::Sym('^') = self.peek() {
            self.pos += 1;
            match self.peek().clone() {
                Tok::Int(n) => {
                    let e: u32 = n.try_into().map_err(|_| self.err(&["small exponent"]))?;
                    self.pos += 1;
                    return Ok(base.pow(e));
                }
                _ => return Err(self.err(&["nonnegative integer exponent"])),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly, ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.pos += 1;
                self.coeff(&BigRational::from_integer(n))
            }
            Tok::Rat(q) => {
                self.pos += 1;
                self.coeff(&q)
            }
            Tok::Ident(name) => match self.ring.var_index(&name) {
                Some(i) => {
                    self.pos += 1;
                    Ok(Poly::var(self.ring, i))
                }
                None => Err(ParseError {
                    offset: self.offset(),
                    expected: self.ring.vars().iter().map(|v| format!("`{v}`")).collect(),
                    found: format!("`{name}`"),
                    message: Some(format!("unknown variable `{name}`")),
                }),
            },
            Tok::Sym('(') => {
                self.pos += 1;
                let p = self.sum()?;
                match self.peek() {
                    Tok::Sym(')') => {
                        self.pos += 1;
                        Ok(p)
                    }
                    _ => Err(self.err(&["`)`", "operator"])),
                }
            }
            Tok::Sym('-') => {
                self.pos += 1;
                Ok(self.factor()?.neg())
            }
            _ => Err(self.err(&["number", "variable", "`(`"])),
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.peek() {
            Tok::End => Ok(()),
            _ => Err(self.err(&["operator", "end of input"])),
        }
    }
}

/// Parses a polynomial in the given ring.
pub fn parse_poly(src: &str, ring: &RingRef) -> Result<Poly, ParseError> {
    let toks = tokenize(src)?;
    let mut p = Parser { toks, pos: 0, ring };
    let poly = p.sum()?;
    p.finish()?;
    Ok(poly)
}

/// Parses `num / den` (the denominator defaults to 1).
pub fn parse_fraction(src: &str, ring: &RingRef) -> Result<(Poly, Poly), ParseError> {
    let toks = tokenize(src)?;
    let mut p = Parser { toks, pos: 0, ring };
    let num = p.sum()?;
    let den = if let Tok::Sym('/') = p.peek() {
        p.pos += 1;
        p.sum()?
    } else {
        Poly::one(ring)
    };
    p.finish()?;
    if den.is_zero() {
        return Err(ParseError {
            offset: src.len(),
            expected: vec![],
            found: "0".into(),
            message: Some("zero denominator".into()),
        });
    }
    Ok((num, den))
}

fn write_monomial(f: &mut fmt::Formatter<'_>, vars: &[String], exps: &[u32]) -> fmt::Result {
    let mut first = true;
    for (v, &e) in vars.iter().zip(exps) {
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        if e == 1 {
            write!(f, "{v}")?;
        } else {
            write!(f, "{v}^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let vars = self.ring().vars();
        for (k, (m, c)) in self.terms().iter().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                write_monomial(f, vars, &m.0)?;
            }
        }
        Ok(())
    }
}

/// `(num)/(den)` with parentheses dropped around single atoms.
pub fn format_fraction(num: &Poly, den: &Poly) -> String {
    if den.is_unit() && den.constant_term().is_one() {
        return wrap(num);
    }
    format!("{} / {}", wrap(num), wrap(den))
}

fn wrap(p: &Poly) -> String {
    let s = p.to_string();
    if p.len() <= 1 && !s.starts_with('-') {
        s
    } else {
        format!("({s})")
    }
}

/// Convenience for tests and examples: panics on malformed input.
pub fn poly(src: &str, ring: &RingRef) -> Poly {
    parse_poly(src, ring).unwrap_or_else(|e| panic!("bad polynomial `{src}`: {e}"))
}

impl Coefficient {
    /// Parses a rational literal into the given field.
    pub fn parse_in(src: &str, field: crate::algebra::coeff::Field) -> Option<Coefficient> {
        let q: BigRational = if let Some((n, d)) = src.split_once('/') {
            BigRational::new(n.trim().parse().ok()?, d.trim().parse().ok()?)
        } else {
            BigRational::from_integer(src.trim().parse().ok()?)
        };
        field.from_rational(&q).ok()
    }
}
