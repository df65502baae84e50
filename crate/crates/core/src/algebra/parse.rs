//! Polynomial text syntax: identifiers for variables, `^` for powers, `*`
//! optional between factors, `/` only by nonzero constants (so `3/2*x` works).

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use super::polynomial::{Polynomial, Ring};
use super::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

#[derive(Clone, Copy, Debug)]
pub struct Position {
    pub line: usize,
    pub column: usize,
}

impl Position {
    pub fn start() -> Self {
        Position { line: 1, column: 1 }
    }
}

fn err(pos: Position, msg: impl Into<String>) -> Error {
    Error::Parse {
        line: pos.line,
        column: pos.column,
        message: msg.into(),
    }
}

fn tokenize(text: &str, start: Position) -> Result<(Vec<(Tok, Position)>, Position)> {
    let mut out = Vec::new();
    let mut pos = start;
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let here = pos;
        if c == '\n' {
            pos.line += 1;
            pos.column = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            pos.column += 1;
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let s = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let lit: String = chars[s..i].iter().collect();
            pos.column += i - s;
            out.push((Tok::Num(lit.parse().expect("digits")), here));
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let s = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            pos.column += i - s;
            out.push((Tok::Ident(chars[s..i].iter().collect()), here));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ => return Err(err(here, format!("unexpected character '{c}'"))),
        };
        out.push((tok, here));
        pos.column += 1;
        i += 1;
    }
    Ok((out, pos))
}

struct Parser<'a> {
    toks: Vec<(Tok, Position)>,
    i: usize,
    end: Position,
    ring: &'a Arc<Ring>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|t| &t.0)
    }

    fn pos(&self) -> Position {
        self.toks.get(self.i).map(|t| t.1).unwrap_or(self.end)
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.i += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.i += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.i += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(Tok::Slash) => {
                    self.i += 1;
                    let at = self.pos();
                    let d = self.unary()?;
                    match d.constant_value() {
                        Some(c) if !c.is_zero() => acc = acc.scale(&c.recip()),
                        Some(_) => return Err(err(at, "division by zero")),
                        None => return Err(err(at, "division is only allowed by nonzero constants")),
                    }
                }
                // juxtaposition: `2x`, `x y`, `3(x+1)`
                Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    acc = &acc * &self.unary()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.i += 1;
                Ok(-&self.unary()?)
            }
            Some(Tok::Plus) => {
                self.i += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.i += 1;
            let at = self.pos();
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.i += 1;
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| err(at, "exponent too large"))?;
                    Ok(base.pow(e))
                }
                _ => Err(err(at, "expected a non-negative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let at = self.pos();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.i += 1;
                Ok(Polynomial::constant(self.ring, Rational::from_integer(n)))
            }
            Some(Tok::Ident(name)) => {
                self.i += 1;
                match self.ring.index_of(&name) {
                    Some(v) => Ok(Polynomial::var(self.ring, v)),
                    None => Err(err(at, format!("unknown variable '{name}'"))),
                }
            }
            Some(Tok::LParen) => {
                self.i += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.i += 1;
                        Ok(inner)
                    }
                    _ => Err(err(self.pos(), "expected ')'")),
                }
            }
            Some(t) => Err(err(at, format!("unexpected token {t:?}"))),
            None => Err(err(at, "unexpected end of expression")),
        }
    }
}

/// Parses a polynomial; positions in errors are relative to `start`.
pub fn parse_polynomial_at(text: &str, ring: &Arc<Ring>, start: Position) -> Result<Polynomial> {
    let (toks, end) = tokenize(text, start)?;
    let mut p = Parser {
        toks,
        i: 0,
        end,
        ring,
    };
    let poly = p.expr()?;
    if p.i != p.toks.len() {
        return Err(err(p.pos(), "trailing input"));
    }
    Ok(poly)
}

pub fn parse_polynomial(text: &str, ring: &Arc<Ring>) -> Result<Polynomial> {
    parse_polynomial_at(text, ring, Position::start())
}
