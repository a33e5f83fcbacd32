//! Recursive-descent parser for the polynomial input grammar:
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := integer | integer '/' integer | var ['^' positive-integer] | '(' expr ')'
//! ```
//!
//! Whitespace is ignored. Integer literals are mapped into the ring's field.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{Polynomial, Ring};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt, String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, ch)) = chars.peek() {
        if ch.is_whitespace() {
            chars.next();
            continue;
        }
        if ch.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&(_, c)) = chars.peek() {
                if !c.is_ascii_digit() {
                    break;
                }
                s.push(c);
                chars.next();
            }
            let v: BigInt = s.parse().expect("digits");
            out.push((pos, Token::Int(v, s)));
            continue;
        }
        if ch.is_ascii_alphabetic() || ch == '_' {
            let mut s = String::new();
            while let Some(&(_, c)) = chars.peek() {
                if !(c.is_ascii_alphanumeric() || c == '_') {
                    break;
                }
                s.push(c);
                chars.next();
            }
            out.push((pos, Token::Ident(s)));
            continue;
        }
        let tok = match ch {
            '+' => Token::Plus,
            '-' => Token::Minus,
            '*' => Token::Star,
            '/' => Token::Slash,
            '^' => Token::Caret,
            '(' => Token::LParen,
            ')' => Token::RParen,
            other => {
                return Err(Error::Syntax {
                    offset: pos,
                    message: format!("unexpected character `{other}`"),
                })
            }
        };
        chars.next();
        out.push((pos, tok));
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
    ring: &'a Ring,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn syntax<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            offset: self.offset(),
            message: message.into(),
        })
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let negate = if self.peek() == Some(&Token::Minus) {
            self.bump();
            true
        } else {
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Some(Token::Minus) => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Token::Star) {
            self.bump();
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let field = self.ring.field();
        match self.bump() {
            Some(Token::Int(num, num_text)) => {
                if self.peek() != Some(&Token::Slash) {
                    return Ok(self.ring.constant(field.from_bigint(&num)));
                }
                self.bump();
                let Some(Token::Int(den, den_text)) = self.bump() else {
                    self.pos -= 1;
                    return self.syntax("expected integer denominator after `/`");
                };
                let literal = format!("{num_text}/{den_text}");
                if den.is_zero() {
                    return Err(Error::DivisionByZero(literal));
                }
                match field.from_ratio(&num, &den) {
                    Some(c) => Ok(self.ring.constant(c)),
                    None => Err(Error::DenominatorVanishes {
                        literal,
                        modulus: field.characteristic().expect("only F_p loses denominators"),
                    }),
                }
            }
            Some(Token::Ident(name)) => {
                let i = self
                    .ring
                    .var_index(&name)
                    .ok_or(Error::UnknownVariable(name))?;
                let var = self.ring.variable(i);
                if self.peek() != Some(&Token::Caret) {
                    return Ok(var);
                }
                self.bump();
                match self.bump() {
                    Some(Token::Int(e, _)) if !e.is_zero() => {
                        let e: u32 = e.try_into().map_err(|_| Error::Syntax {
                            offset: self.offset(),
                            message: "exponent too large".into(),
                        })?;
                        Ok(var.pow(e))
                    }
                    _ => {
                        self.pos -= 1;
                        self.syntax("expected positive integer exponent after `^`")
                    }
                }
            }
            Some(Token::LParen) => {
                let inner = self.expr()?;
                if self.bump() != Some(Token::RParen) {
                    self.pos -= 1;
                    return self.syntax("expected `)`");
                }
                Ok(inner)
            }
            Some(_) => {
                self.pos -= 1;
                self.syntax("expected integer, variable or `(`")
            }
            None => self.syntax("unexpected end of input"),
        }
    }
}

/// Parses `text` into a polynomial of `ring`.
pub fn parse(text: &str, ring: &Ring) -> Result<Polynomial> {
    let tokens = tokenize(text)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        end: text.len(),
        ring,
    };
    let poly = p.expr()?;
    if p.pos < p.tokens.len() {
        return p.syntax("trailing input");
    }
    Ok(poly)
}
