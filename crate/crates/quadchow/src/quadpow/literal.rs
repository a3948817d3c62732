//! Text form of quadric-power cycles.
//!
//! ```text
//! expr   := sign? term (('+' | '-') term)*
//! term   := INT ext | ext              -- an integer directly followed by an atom is a coefficient
//! ext    := prod ('x' prod)*           -- external product
//! prod   := atom ('*' atom)*           -- internal product
//! atom   := INT | 'h' ('^' INT)? | 'l' '_'? (INT | 'd') "'"? | '(' expr ')'
//! ```
//!
//! A bare integer `k` denotes `k·[X]`, so `1 x l0` is the Rost correspondence
//! and `2 l1` is twice `l_1`. Printing uses the same grammar, with terms in
//! increasing basis order.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use super::{QuadBasis, QuadCycle, QuadMonomial};
use crate::context::QuadricContext;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(i64),
    H,
    L { index: Option<u32>, prime: bool },
    Ext,
    Star,
    Caret,
    Plus,
    Minus,
    Open,
    Close,
}

fn err(position: usize, message: impl Into<String>) -> Error {
    Error::Parse { position, message: message.into() }
}

fn tokenize(input: &str) -> Result<Vec<(usize, Token)>> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut pos = 0;
    let read_int = |pos: &mut usize| -> Result<i64> {
        let start = *pos;
        while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
            *pos += 1;
        }
        input[start..*pos].parse().map_err(|_| err(start, "integer out of range"))
    };
    while pos < bytes.len() {
        let start = pos;
        let c = bytes[pos];
        let token = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                pos += 1;
                continue;
            }
            b'0'..=b'9' => Token::Int(read_int(&mut pos)?),
            b'h' => {
                pos += 1;
                Token::H
            }
            b'l' => {
                pos += 1;
                if pos < bytes.len() && bytes[pos] == b'_' {
                    pos += 1;
                }
                let index = if pos < bytes.len() && bytes[pos] == b'd' {
                    pos += 1;
                    None
                } else if pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    Some(read_int(&mut pos)? as u32)
                } else {
                    return Err(err(pos, "expected an index after 'l'"));
                };
                let prime = pos < bytes.len() && bytes[pos] == b'\'';
                if prime {
                    pos += 1;
                }
                Token::L { index, prime }
            }
            b'x' => {
                pos += 1;
                Token::Ext
            }
            b'*' => {
                pos += 1;
                Token::Star
            }
            b'^' => {
                pos += 1;
                Token::Caret
            }
            b'+' => {
                pos += 1;
                Token::Plus
            }
            b'-' => {
                pos += 1;
                Token::Minus
            }
            b'(' => {
                pos += 1;
                Token::Open
            }
            b')' => {
                pos += 1;
                Token::Close
            }
            _ => {
                let ch = input[start..].chars().next().unwrap_or('?');
                return Err(err(start, alloc::format!("unexpected character '{ch}'")));
            }
        };
        out.push((start, token));
    }
    Ok(out)
}

struct Parser<'a> {
    ctx: &'a QuadricContext,
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn peek_at(&self, offset: usize) -> Option<&Token> {
        self.tokens.get(self.pos + offset).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.tokens.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn lift(&self, r: Result<QuadCycle>, at: usize) -> Result<QuadCycle> {
        r.map_err(|e| err(at, e.to_string()))
    }

    fn expr(&mut self) -> Result<QuadCycle> {
        let mut negate = false;
        match self.peek() {
            Some(Token::Minus) => {
                self.bump();
                negate = true;
            }
            Some(Token::Plus) => {
                self.bump();
            }
            _ => {}
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.scale(-1);
        }
        loop {
            let at = self.here();
            let sign = match self.peek() {
                Some(Token::Plus) => 1,
                Some(Token::Minus) => -1,
                _ => return Ok(acc),
            };
            self.bump();
            let t = self.term()?.scale(sign);
            acc = self.lift(acc.add(&t), at)?;
        }
    }

    fn starts_atom(t: Option<&Token>) -> bool {
        matches!(t, Some(Token::Int(_) | Token::H | Token::L { .. } | Token::Open))
    }

    fn term(&mut self) -> Result<QuadCycle> {
        if let (Some(Token::Int(k)), true) = (self.peek(), Self::starts_atom(self.peek_at(1))) {
            let k = *k;
            self.bump();
            return Ok(self.ext()?.scale(k));
        }
        self.ext()
    }

    fn ext(&mut self) -> Result<QuadCycle> {
        let mut acc = self.prod()?;
        while let Some(Token::Ext) = self.peek() {
            let at = self.here();
            self.bump();
            let rhs = self.prod()?;
            acc = self.lift(acc.external(&rhs), at)?;
        }
        Ok(acc)
    }

    fn prod(&mut self) -> Result<QuadCycle> {
        let mut acc = self.atom()?;
        while let Some(Token::Star) = self.peek() {
            let at = self.here();
            self.bump();
            let rhs = self.atom()?;
            acc = self.lift(acc.mul(&rhs), at)?;
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<QuadCycle> {
        let at = self.here();
        match self.bump() {
            Some(Token::Int(k)) => Ok(QuadCycle::unit(self.ctx, 1).scale(k)),
            Some(Token::H) => {
                if let Some(Token::Caret) = self.peek() {
                    self.bump();
                    match self.bump() {
                        Some(Token::Int(k)) if k >= 0 => Ok(QuadCycle::h_power(self.ctx, k as u32)),
                        _ => Err(err(self.here(), "expected a nonnegative exponent after '^'")),
                    }
                } else {
                    Ok(QuadCycle::h_power(self.ctx, 1))
                }
            }
            Some(Token::L { index, prime }) => {
                let d = self.ctx.d();
                let b = index.unwrap_or(d);
                let class = if prime {
                    if b != d {
                        return Err(err(at, alloc::format!("only l{d}' has a prime")));
                    }
                    QuadCycle::l_prime(self.ctx)
                } else {
                    QuadCycle::l(self.ctx, b)
                };
                class.map_err(|e| err(at, e.to_string()))
            }
            Some(Token::Open) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Token::Close) => Ok(inner),
                    _ => Err(err(self.here(), "expected ')'")),
                }
            }
            Some(_) => Err(err(at, "expected a class")),
            None => Err(err(at, "unexpected end of input")),
        }
    }
}

/// Parses a cycle literal on a power of the quadric of `ctx`.
pub fn parse(ctx: &QuadricContext, input: &str) -> Result<QuadCycle> {
    let tokens = tokenize(input)?;
    let mut parser = Parser { ctx, tokens, pos: 0, end: input.len() };
    let out = parser.expr()?;
    if parser.pos < parser.tokens.len() {
        return Err(err(parser.here(), "unexpected trailing input"));
    }
    Ok(out)
}

impl fmt::Display for QuadBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuadBasis::H(0) => f.write_str("1"),
            QuadBasis::H(1) => f.write_str("h"),
            QuadBasis::H(a) => write!(f, "h^{a}"),
            QuadBasis::L(b) => write!(f, "l{b}"),
            QuadBasis::LPrime(b) => write!(f, "l{b}'"),
        }
    }
}

impl fmt::Display for QuadMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, b) in self.factors().iter().enumerate() {
            if j > 0 {
                f.write_str(" x ")?;
            }
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl fmt::Display for QuadCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (pos, (m, &c)) in self.terms().enumerate() {
            let magnitude = c.unsigned_abs();
            match (pos, c < 0) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if magnitude != 1 {
                write!(f, "{magnitude} ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}
