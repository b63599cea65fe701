//! Scalar literals: polynomials in `z` (the field generator) with rational
//! coefficients, e.g. `-1/3`, `z^2`, `1/2*z^3 + 2`.
//!
//! ```text
//! expr   := sign? term (("+" | "-") term)*
//! term   := factor ("*"? factor)*
//! factor := int ("/" int)? | "z" ("^" "-"? int)? | "(" expr ")"
//! ```

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::field::{FieldSpec, Scalar};
use super::rational::Rational;
use crate::error::{Error, Result};

/// Parses a whole scalar literal.
pub fn parse_scalar(text: &str, field: &Arc<FieldSpec>) -> Result<Scalar> {
    parse_scalar_at(text, 0, field)
}

/// Like [`parse_scalar`], reporting error positions shifted by `offset`.
pub fn parse_scalar_at(text: &str, offset: usize, field: &Arc<FieldSpec>) -> Result<Scalar> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        offset,
        field,
    };
    p.skip_ws();
    if p.at_end() {
        return Err(p.err("empty scalar literal"));
    }
    let v = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.err(&format!("unexpected `{}`", p.src[p.pos] as char)));
    }
    Ok(v)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    offset: usize,
    field: &'a Arc<FieldSpec>,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Syntax {
            pos: self.pos + self.offset,
            msg: msg.to_string(),
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Scalar> {
        let mut acc = if self.eat(b'-') {
            -self.term()?
        } else {
            self.eat(b'+');
            self.term()?
        };
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Scalar> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.factor()?;
                continue;
            }
            self.skip_ws();
            match self.peek() {
                Some(b'z') | Some(b'(') => acc = &acc * &self.factor()?,
                _ => return Ok(acc),
            }
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse"))
    }

    fn factor(&mut self) -> Result<Scalar> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let den = if self.eat(b'/') {
                    let at = self.pos;
                    let d = self.integer()?;
                    if d == BigInt::from(0) {
                        self.pos = at;
                        return Err(self.err("zero denominator"));
                    }
                    d
                } else {
                    BigInt::from(1)
                };
                Ok(self
                    .field
                    .from_rational(Rational::from_big(BigRational::new(num, den))))
            }
            Some(b'z') => {
                self.pos += 1;
                let e = if self.eat(b'^') {
                    let neg = self.eat(b'-');
                    let at = self.pos;
                    let e: i64 = self.integer()?.try_into().map_err(|_| {
                        Error::Syntax {
                            pos: at + self.offset,
                            msg: "exponent too large".into(),
                        }
                    })?;
                    if neg {
                        -e
                    } else {
                        e
                    }
                } else {
                    1
                };
                Ok(self.field.zeta().pow(e))
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(v)
            }
            Some(c) => Err(self.err(&format!("unexpected `{}`", c as char))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}
