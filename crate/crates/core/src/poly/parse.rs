//! Recursive-descent parser for the polynomial input grammar.
//!
//! ```text
//! expr   := sign? term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | identifier | '(' expr ')'
//! ```
//!
//! Identifiers are ring variables or the parameter symbol. Division is only
//! allowed by nonzero constants (which may involve the parameter).

use std::sync::Arc;

use num_bigint::BigInt;

use crate::coeffield::Rational;
use crate::error::{Error, Result};

use super::{Polynomial, Ring};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
}

impl Lexer {
    fn new(text: &str) -> Result<Self> {
        let chars: Vec<char> = text.chars().collect();
        let mut toks = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = i + 1;
            if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                toks.push((Tok::Int(s.parse().expect("digits")), col));
            } else if c.is_ascii_alphabetic() {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                toks.push((Tok::Ident(chars[start..i].iter().collect()), col));
            } else if "+-*/^()".contains(c) {
                toks.push((Tok::Sym(c), col));
                i += 1;
            } else {
                return Err(Error::parse_at(col, format!("unexpected character {c:?}")));
            }
        }
        toks.push((Tok::End, chars.len() + 1));
        Ok(Self { toks })
    }
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    ring: &'a Arc<Ring>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn col(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let negate = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?);
            } else if *self.peek() == Tok::Sym('/') {
                let col = self.col();
                self.bump();
                let d = self.unary()?;
                if !d.is_constant() || d.is_zero() {
                    return Err(Error::parse_at(
                        col,
                        "division is only allowed by a nonzero constant",
                    ));
                }
                let c = d.constant_term().inv()?;
                acc = acc.scale(&c);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let col = self.col();
        match self.bump() {
            Tok::Int(n) => {
                let e: u32 = n
                    .try_into()
                    .map_err(|_| Error::parse_at(col, "exponent too large"))?;
                if *self.peek() == Tok::Sym('^') {
                    return Err(Error::parse_at(self.col(), "chained exponents need parentheses"));
                }
                Ok(base.pow(e))
            }
            _ => Err(Error::parse_at(col, "expected a non-negative integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let col = self.col();
        match self.bump() {
            Tok::Int(n) => Ok(Polynomial::constant(
                self.ring,
                self.ring.domain().from_rational(Rational::from_integer(n)),
            )),
            Tok::Ident(name) => {
                if let Some(i) = self.ring.vars().index_of(&name) {
                    Ok(Polynomial::var(self.ring, i))
                } else if self.ring.param() == Some(name.as_str()) {
                    Ok(Polynomial::constant(
                        self.ring,
                        crate::coeffield::FieldElement::Function(crate::coeffield::RationalFunction::param()),
                    ))
                } else {
                    Err(Error::parse_at(col, format!("unknown variable {name:?}")))
                }
            }
            Tok::Sym('(') => {
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::parse_at(self.col(), "expected ')'"));
                }
                Ok(inner)
            }
            Tok::End => Err(Error::parse_at(col, "unexpected end of input")),
            Tok::Sym(c) => Err(Error::parse_at(col, format!("unexpected {c:?}"))),
        }
    }
}

/// Parses `text` into a polynomial of `ring`. Error columns are 1-based.
pub fn parse_polynomial(text: &str, ring: &Arc<Ring>) -> Result<Polynomial> {
    let lexer = Lexer::new(text)?;
    let mut p = Parser {
        toks: lexer.toks,
        pos: 0,
        ring,
    };
    let out = p.expr()?;
    match p.peek() {
        Tok::End => Ok(out),
        _ => Err(Error::parse_at(p.col(), "expected an operator")),
    }
}
