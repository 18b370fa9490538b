//! Parser for rational expressions in `t` and `x`.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' INT)?
//! atom  := INT | 't' | 'x' | '(' expr ')'
//! ```
//!
//! `^` binds tightest, so `-x^2` is `-(x^2)`. Exponents are nonnegative
//! integer literals.

use num_bigint::BigInt;

use super::poly::Poly2;
use super::rat::RatFun2;
use crate::error::{Error, Result};

pub fn parse_expr(text: &str) -> Result<RatFun2> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(value)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::ExprSyntax { pos: self.pos, msg: msg.to_string() }
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

    fn expr(&mut self) -> Result<RatFun2> {
        let mut acc = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == b'+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFun2> {
        let mut acc = self.unary()?;
        while let Some(op @ (b'*' | b'/')) = self.peek() {
            let at = self.pos;
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if op == b'*' {
                &acc * &rhs
            } else {
                acc.div(&rhs).map_err(|_| Error::ExprSyntax { pos: at, msg: "division by the zero polynomial".into() })?
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RatFun2> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        if self.peek() == Some(b'+') {
            self.pos += 1;
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatFun2> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let digits = self.digits().ok_or_else(|| self.error("expected integer exponent"))?;
            let e: u32 = digits.parse().map_err(|_| self.error("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn atom(&mut self) -> Result<RatFun2> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b't') => {
                self.pos += 1;
                Ok(Poly2::t().into())
            }
            Some(b'x') => {
                self.pos += 1;
                Ok(Poly2::x().into())
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits().expect("at least one digit");
                let n: BigInt = d.parse().expect("decimal digits");
                Ok(Poly2::constant(n).into())
            }
            Some(_) => Err(self.error("expected number, variable or '('")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}
