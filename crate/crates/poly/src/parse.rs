//! Recursive-descent parser for the textual polynomial syntax used in
//! fixtures and reports, e.g. `-2*x1^2*hbar[a] + (x2 - x3)^2 + 1/2`.
//!
//! Grammar:
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*      // '/' only by nonzero constants
//! unary  := '-' unary | '+' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | 'x' integer | 'hbar[' id ']' | '(' expr ')'
//! ```

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::{MultiPoly, PolyError, Result, VarTable};

pub(crate) fn parse_poly(vars: &Arc<VarTable>, text: &str) -> Result<MultiPoly> {
    let mut p = Parser {
        vars,
        src: text.as_bytes(),
        pos: 0,
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    vars: &'a Arc<VarTable>,
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> PolyError {
        PolyError::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = self.term()?;
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

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.unary()?;
            } else if self.eat(b'/') {
                let at = self.pos;
                let d = self.unary()?;
                match d.constant_value() {
                    Some(c) if !c.is_zero() => acc = acc.scale(&c.recip()),
                    _ => {
                        return Err(PolyError::Parse {
                            pos: at,
                            msg: "division only by nonzero constants".into(),
                        })
                    }
                }
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<MultiPoly> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if self.eat(b'^') {
            self.skip_ws();
            let e = self.integer()?;
            let e: u32 = e
                .try_into()
                .map_err(|_| self.error("exponent out of range"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse as integer"))
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(MultiPoly::constant(self.vars, BigRational::from_integer(n)))
            }
            Some(b'x') => {
                let at = self.pos;
                self.pos += 1;
                let k = self.integer()?;
                let k: usize = k.try_into().map_err(|_| self.error("index out of range"))?;
                let idx = self.vars.x_index(k).ok_or(PolyError::Parse {
                    pos: at,
                    msg: format!("x{k} outside x1..x{}", self.vars.x_count()),
                })?;
                Ok(MultiPoly::var(self.vars, idx))
            }
            Some(b'h') => {
                let at = self.pos;
                if !self.src[self.pos..].starts_with(b"hbar[") {
                    return Err(self.error("expected `hbar[`"));
                }
                self.pos += 5;
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos] != b']' {
                    self.pos += 1;
                }
                if self.pos == self.src.len() {
                    return Err(self.error("unterminated `hbar[`"));
                }
                let id = std::str::from_utf8(&self.src[start..self.pos])
                    .map_err(|_| self.error("edge id is not UTF-8"))?
                    .trim()
                    .to_string();
                self.pos += 1;
                let idx = self.vars.hbar_index(&id).ok_or(PolyError::Parse {
                    pos: at,
                    msg: format!("unknown edge `{id}`"),
                })?;
                Ok(MultiPoly::var(self.vars, idx))
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}
