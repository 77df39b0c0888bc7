//! Parser for the polynomial input language.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' INT)?
//! atom   := NUMBER | IDENT | '(' expr ')'
//! NUMBER := INT ('/' INT)?
//! IDENT  := [a-z][a-zA-Z0-9_]*
//! ```
//!
//! Whitespace is insignificant; implicit multiplication is rejected.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{Polynomial, Rational, Ring};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rational),
    Int(u32),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn digits(&mut self) -> &'a str {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap()
    }

    fn next(&mut self) -> Result<(usize, Tok)> {
        self.skip_ws();
        let start = self.pos;
        let Some(&c) = self.src.get(self.pos) else {
            return Ok((start, Tok::End));
        };
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
            b'(' => {
                self.pos += 1;
                Tok::LParen
            }
            b')' => {
                self.pos += 1;
                Tok::RParen
            }
            b'0'..=b'9' => {
                let num: BigInt = self.digits().parse().unwrap();
                let mut den = None;
                if self.src.get(self.pos) == Some(&b'/') {
                    self.pos += 1;
                    if !matches!(self.src.get(self.pos), Some(b'0'..=b'9')) {
                        return Err(syntax(self.pos, "expected digits after '/'"));
                    }
                    let d: BigInt = self.digits().parse().unwrap();
                    if d.is_zero() {
                        return Err(syntax(start, "zero denominator"));
                    }
                    den = Some(d);
                }
                match den {
                    Some(d) => Tok::Num(Rational::new(num, d)),
                    None => match u32::try_from(&num) {
                        Ok(small) => Tok::Int(small),
                        Err(_) => Tok::Num(Rational::from_integer(num)),
                    },
                }
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                let s = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                Tok::Ident(
                    std::str::from_utf8(&self.src[s..self.pos])
                        .unwrap()
                        .to_string(),
                )
            }
            _ => {
                let ch = std::str::from_utf8(&self.src[self.pos..])
                    .ok()
                    .and_then(|s| s.chars().next())
                    .unwrap_or('?');
                return Err(syntax(start, &format!("unexpected character '{ch}'")));
            }
        };
        Ok((start, tok))
    }
}

fn syntax(pos: usize, msg: &str) -> Error {
    Error::Syntax {
        pos,
        msg: msg.to_string(),
    }
}

struct Parser<'a> {
    lex: Lexer<'a>,
    ring: &'a Ring,
    cur: Tok,
    cur_pos: usize,
}

impl<'a> Parser<'a> {
    fn bump(&mut self) -> Result<()> {
        let (p, t) = self.lex.next()?;
        self.cur = t;
        self.cur_pos = p;
        Ok(())
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            match self.cur {
                Tok::Plus => {
                    self.bump()?;
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump()?;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        while self.cur == Tok::Star {
            self.bump()?;
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial> {
        match self.cur {
            Tok::Minus => {
                self.bump()?;
                Ok(-self.unary()?)
            }
            Tok::Plus => {
                self.bump()?;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.cur == Tok::Caret {
            self.bump()?;
            let Tok::Int(e) = self.cur else {
                return Err(syntax(
                    self.cur_pos,
                    "exponent must be a non-negative integer",
                ));
            };
            self.bump()?;
            if self.cur == Tok::Caret {
                return Err(syntax(self.cur_pos, "chained exponent; use parentheses"));
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let pos = self.cur_pos;
        let p = match std::mem::replace(&mut self.cur, Tok::End) {
            Tok::Int(n) => Polynomial::constant(self.ring, Rational::from_integer(n.into())),
            Tok::Num(q) => Polynomial::constant(self.ring, q),
            Tok::Ident(name) => match self.ring.index_of(&name) {
                Some(i) => Polynomial::var_at(self.ring, i),
                None => return Err(Error::UnknownVariable(name)),
            },
            Tok::LParen => {
                self.bump()?;
                let inner = self.expr()?;
                if self.cur != Tok::RParen {
                    return Err(syntax(self.cur_pos, "expected ')'"));
                }
                inner
            }
            Tok::End => return Err(syntax(pos, "unexpected end of input")),
            other => return Err(syntax(pos, &format!("unexpected token {other:?}"))),
        };
        self.bump()?;
        Ok(p)
    }
}

/// Parses `text` as a polynomial in `ring`.
pub fn parse_poly(text: &str, ring: &Ring) -> Result<Polynomial> {
    let mut p = Parser {
        lex: Lexer {
            src: text.as_bytes(),
            pos: 0,
        },
        ring,
        cur: Tok::End,
        cur_pos: 0,
    };
    p.bump()?;
    let out = p.expr()?;
    if p.cur != Tok::End {
        return Err(syntax(
            p.cur_pos,
            "unexpected trailing input (implicit multiplication is not allowed)",
        ));
    }
    Ok(out)
}
