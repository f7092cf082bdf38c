//! The polynomial text grammar shared by every module:
//!
//! ```text
//! poly   := term (('+'|'-') term)*
//! term   := coeff ('*' factor)* | factor ('*' factor)*
//! factor := var ('^' uint)? | '(' poly ')'
//! coeff  := int | int '/' uint
//! ```
//!
//! Whitespace is insignificant. Variables are the identifiers declared in the
//! active ring. Printing is deterministic: terms in decreasing active order,
//! normalized integer coefficients, explicit `^` and `*`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{Poly, Ring};
use crate::scalar::{FieldCtx, Scalar};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    /// byte offset where the current line starts
    line_start: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str, line: usize) -> Self {
        Lexer { src: src.as_bytes(), pos: 0, line, line_start: 0 }
    }

    fn col(&self) -> usize {
        self.pos - self.line_start + 1
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Syntax { line: self.line, col: self.col(), msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() {
            match self.src[self.pos] {
                b' ' | b'\t' | b'\r' => self.pos += 1,
                b'\n' => {
                    self.pos += 1;
                    self.line += 1;
                    self.line_start = self.pos;
                }
                _ => break,
            }
        }
    }

    fn next(&mut self) -> Result<Option<(Tok, usize, usize)>> {
        self.skip_ws();
        if self.pos >= self.src.len() {
            return Ok(None);
        }
        let (line, col) = (self.line, self.col());
        let c = self.src[self.pos];
        let tok = match c {
            b'+' => {
                self.pos += 1;
                Tok::Plus
            }
            b'-' => {
                self.pos += 1;
                Tok::Minus
            }
            b'*' => {
                self.pos += 1;
                Tok::Star
            }
            b'^' => {
                self.pos += 1;
                Tok::Caret
            }
            b'/' => {
                self.pos += 1;
                Tok::Slash
            }
            b'(' => {
                self.pos += 1;
                Tok::LParen
            }
            b')' => {
                self.pos += 1;
                Tok::RParen
            }
            b'0'..=b'9' => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                Tok::Int(s.parse().unwrap())
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                Tok::Ident(std::str::from_utf8(&self.src[start..self.pos]).unwrap().to_string())
            }
            other => return Err(self.err(format!("unexpected character `{}`", other as char))),
        };
        Ok(Some((tok, line, col)))
    }
}

struct Parser<'a> {
    toks: Vec<(Tok, usize, usize)>,
    idx: usize,
    ring: &'a Ring,
    line: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.idx).map(|(t, _, _)| t)
    }

    fn pos(&self) -> (usize, usize) {
        self.toks
            .get(self.idx)
            .map(|&(_, l, c)| (l, c))
            .unwrap_or_else(|| self.toks.last().map(|&(_, l, c)| (l, c + 1)).unwrap_or((self.line, 1)))
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        let (line, col) = self.pos();
        Error::Syntax { line, col, msg: msg.into() }
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.idx).map(|(t, _, _)| t.clone());
        self.idx += 1;
        t
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        if self.peek() == Some(&t) {
            self.idx += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected {t:?}")))
        }
    }

    fn scalar_from_int(&self, n: &BigInt) -> Scalar {
        match &self.ring.field {
            FieldCtx::Rat => Scalar::Rat(BigRational::from_integer(n.clone())),
            FieldCtx::Fp(p) => {
                let m = (n % BigInt::from(*p) + BigInt::from(*p)) % BigInt::from(*p);
                let digits = m.to_u64_digits().1;
                Scalar::Fp { val: digits.first().copied().unwrap_or(0), p: *p }
            }
            FieldCtx::Frac(_) => unreachable!("text input never targets fraction coefficients"),
        }
    }

    fn parse_poly(&mut self) -> Result<Poly> {
        let ord = MonomialOrder::GrevLex;
        let mut sign = match self.peek() {
            Some(Tok::Minus) => {
                self.idx += 1;
                true
            }
            Some(Tok::Plus) => {
                self.idx += 1;
                false
            }
            _ => false,
        };
        let mut acc = Poly::zero();
        loop {
            let term = self.parse_term()?;
            acc = if sign { acc.sub(&term, &ord) } else { acc.add(&term, &ord) };
            match self.peek() {
                Some(Tok::Plus) => {
                    self.idx += 1;
                    sign = false;
                }
                Some(Tok::Minus) => {
                    self.idx += 1;
                    sign = true;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn parse_term(&mut self) -> Result<Poly> {
        let ord = MonomialOrder::GrevLex;
        let mut acc = match self.peek() {
            Some(Tok::Int(_)) => {
                let n = match self.bump() {
                    Some(Tok::Int(n)) => n,
                    _ => unreachable!(),
                };
                let mut c = self.scalar_from_int(&n);
                if self.peek() == Some(&Tok::Slash) {
                    self.idx += 1;
                    match self.bump() {
                        Some(Tok::Int(d)) => {
                            let ds = self.scalar_from_int(&d);
                            if ds.is_zero() {
                                return Err(self.err("zero denominator"));
                            }
                            c = c.div(&ds);
                        }
                        _ => return Err(self.err("expected denominator")),
                    }
                }
                Poly::constant_in(c, self.ring.nvars())
            }
            _ => self.parse_factor()?,
        };
        while self.peek() == Some(&Tok::Star) {
            self.idx += 1;
            let f = self.parse_factor()?;
            acc = acc.mul(&f, &ord);
        }
        Ok(acc)
    }

    fn parse_factor(&mut self) -> Result<Poly> {
        match self.bump() {
            Some(Tok::Ident(name)) => {
                let i = self.ring.var_index(&name).ok_or_else(|| {
                    let (line, _) = {
                        let idx = self.idx - 1;
                        let &(_, l, c) = &self.toks[idx];
                        (l, c)
                    };
                    Error::Undeclared { line, name: name.clone() }
                })?;
                let e = if self.peek() == Some(&Tok::Caret) {
                    self.idx += 1;
                    match self.bump() {
                        Some(Tok::Int(n)) => {
                            u32::try_from(&n).map_err(|_| self.err("exponent too large"))?
                        }
                        _ => return Err(self.err("expected exponent")),
                    }
                } else {
                    1
                };
                let m = Monomial(
                    (0..self.ring.nvars()).map(|j| if j == i { e } else { 0 }).collect(),
                );
                Ok(Poly { terms: vec![(self.ring.field.one(), m)] })
            }
            Some(Tok::LParen) => {
                let p = self.parse_poly()?;
                self.expect(Tok::RParen)?;
                Ok(p)
            }
            _ => Err(self.err("expected a variable, `(`, or a coefficient")),
        }
    }
}

/// Parse a polynomial in `ring`, reporting positions relative to `line`.
pub fn parse_poly_at(text: &str, ring: &Ring, line: usize) -> Result<Poly> {
    let mut lex = Lexer::new(text, line);
    let mut toks = vec![];
    while let Some(t) = lex.next()? {
        toks.push(t);
    }
    if toks.is_empty() {
        return Err(Error::Syntax { line, col: 1, msg: "empty polynomial".into() });
    }
    let mut p = Parser { toks, idx: 0, ring, line };
    let poly = p.parse_poly()?;
    if p.idx != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(poly)
}

pub fn parse_poly(text: &str, ring: &Ring) -> Result<Poly> {
    parse_poly_at(text, ring, 1)
}

fn monomial_string(m: &Monomial, ring: &Ring) -> String {
    let mut parts = vec![];
    for (i, &e) in m.0.iter().enumerate() {
        if e == 1 {
            parts.push(ring.vars[i].clone());
        } else if e > 1 {
            parts.push(format!("{}^{}", ring.vars[i], e));
        }
    }
    parts.join("*")
}

/// Deterministic rendering: terms in decreasing `ord`.
pub fn poly_to_string(p: &Poly, ring: &Ring, ord: &MonomialOrder) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let sorted = p.resort(ord);
    let mut out = String::new();
    for (i, (c, m)) in sorted.terms.iter().enumerate() {
        let (sep, coeff) = match c {
            Scalar::Rat(r) => {
                if r.is_negative() {
                    (if i == 0 { "-" } else { " - " }, Scalar::Rat(-r))
                } else {
                    (if i == 0 { "" } else { " + " }, c.clone())
                }
            }
            _ => (if i == 0 { "" } else { " + " }, c.clone()),
        };
        out.push_str(sep);
        let ms = monomial_string(m, ring);
        if ms.is_empty() {
            out.push_str(&coeff.to_string());
        } else if coeff.is_one() {
            out.push_str(&ms);
        } else {
            out.push_str(&format!("{coeff}*{ms}"));
        }
    }
    out
}
