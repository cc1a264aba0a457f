//! Recursive-descent parser for the polynomial grammar.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := '-' factor | power
//! power  := atom ('^' integer)?
//! atom   := integer ('/' integer)? | identifier | '(' expr ')'
//! ```
//!
//! Identifiers match `[a-zA-Z][a-zA-Z0-9_]*` and must be declared in the ring.
//! There is no implicit multiplication and no division operator; `n/d` is
//! only meaningful as a rational literal.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::ring::{Polynomial, Rational, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character `{0}`")]
    UnexpectedChar(char),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("undeclared variable `{0}`")]
    UndeclaredVariable(String),
    #[error("malformed rational literal: {0}")]
    MalformedRational(String),
    #[error("exponent out of range")]
    ExponentOutOfRange,
}

/// Parse failure with the byte offset where it was detected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at offset {offset}: {kind}")]
pub struct ParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '/' => Tok::Slash,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Int(src[start..i].to_string())));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(src[start..i].to_string())));
                continue;
            }
            _ => {
                let ch = src[start..].chars().next().unwrap_or(c);
                return Err(ParseError { offset: start, kind: ParseErrorKind::UnexpectedChar(ch) });
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    ring: &'a Arc<Ring>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(self.src.len())
    }

    fn unexpected(&self) -> ParseError {
        match self.toks.get(self.pos) {
            Some((o, _)) => {
                let ch = self.src[*o..].chars().next().unwrap_or(' ');
                ParseError { offset: *o, kind: ParseErrorKind::UnexpectedChar(ch) }
            }
            None => ParseError { offset: self.src.len(), kind: ParseErrorKind::UnexpectedEnd },
        }
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        while let Some(Tok::Star) = self.peek() {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        if let Some(Tok::Minus) = self.peek() {
            self.pos += 1;
            return Ok(-&self.factor()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            let offset = self.offset();
            match self.peek().cloned() {
                Some(Tok::Int(digits)) => {
                    self.pos += 1;
                    let e: u32 =
                        digits.parse().map_err(|_| ParseError { offset, kind: ParseErrorKind::ExponentOutOfRange })?;
                    return Ok(base.pow(e));
                }
                _ => return Err(self.unexpected()),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        let offset = self.offset();
        match self.peek().cloned() {
            Some(Tok::Int(digits)) => {
                self.pos += 1;
                let numer: BigInt = digits.parse().expect("digits");
                if let Some(Tok::Slash) = self.peek() {
                    self.pos += 1;
                    let denom = match self.peek().cloned() {
                        Some(Tok::Int(d)) => {
                            self.pos += 1;
                            d.parse::<BigInt>().expect("digits")
                        }
                        _ => {
                            return Err(ParseError {
                                offset,
                                kind: ParseErrorKind::MalformedRational(format!(
                                    "`{digits}/` needs an integer denominator"
                                )),
                            })
                        }
                    };
                    if denom.is_zero() {
                        return Err(ParseError {
                            offset,
                            kind: ParseErrorKind::MalformedRational("zero denominator".into()),
                        });
                    }
                    return Ok(Polynomial::constant(self.ring, Rational::new(numer, denom)));
                }
                Ok(Polynomial::constant(self.ring, Rational::from_integer(numer)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Polynomial::var(self.ring, &name)
                    .map_err(|_| ParseError { offset, kind: ParseErrorKind::UndeclaredVariable(name) })
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err(self.unexpected()),
                }
            }
            _ => Err(self.unexpected()),
        }
    }
}

/// Parses `src` as a polynomial over `ring`.
pub fn parse_poly(src: &str, ring: &Arc<Ring>) -> Result<Polynomial, ParseError> {
    let toks = tokenize(src)?;
    let mut p = Parser { src, toks, pos: 0, ring };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.unexpected());
    }
    Ok(out)
}
