//! Parser for the scalar expression grammar used in `.wdt` documents.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := unary (('*'|'/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' ['-'] integer)?
//! atom   := integer | 'z' | variable | '(' expr ')'
//! ```
//!
//! `z` is zeta_N for the ambient order N. Division and negative powers are
//! allowed only for units of the Laurent domain (nonzero monomials).

use std::fmt;

use num_bigint::BigInt;

use super::{Cyclo, LaurentPoly, Rational, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExprError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ExprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at offset {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ExprError {}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a [String],
    order: u32,
}

/// Parses `src` into a Laurent polynomial over Q(zeta_order) in `vars`.
pub fn parse_expr(src: &str, vars: &[String], order: u32) -> Result<LaurentPoly, ExprError> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
        vars,
        order,
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(v)
}

impl Parser<'_> {
    fn err(&self, msg: impl Into<String>) -> ExprError {
        ExprError {
            position: self.pos,
            message: msg.into(),
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

    fn expr(&mut self) -> Result<LaurentPoly, ExprError> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -self.term()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<LaurentPoly, ExprError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc * self.unary()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.unary()?;
                    let inv = d.unit_inverse().ok_or_else(|| ExprError {
                        position: at,
                        message: format!("division by `{d}`, which is not a unit"),
                    })?;
                    acc = acc * inv;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<LaurentPoly, ExprError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<LaurentPoly, ExprError> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let negative = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        self.skip_ws();
        let at = self.pos;
        let digits = self.digits();
        if digits.is_empty() {
            return Err(self.err("expected an integer exponent"));
        }
        let e: u32 = digits.parse().map_err(|_| ExprError {
            position: at,
            message: "exponent too large".into(),
        })?;
        let b = if negative {
            base.unit_inverse().ok_or_else(|| ExprError {
                position: at,
                message: format!("negative power of `{base}`, which is not a unit"),
            })?
        } else {
            base
        };
        let mut acc = LaurentPoly::one();
        for _ in 0..e {
            acc = acc * &b;
        }
        Ok(acc)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<LaurentPoly, ExprError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits();
                let n: BigInt = d.parse().map_err(|_| self.err("bad integer"))?;
                Ok(LaurentPoly::constant(Cyclo::rational(Rational::from_integer(n))))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii identifier");
                if name == "z" {
                    return Ok(LaurentPoly::constant(Cyclo::zeta(self.order)));
                }
                match self.vars.iter().position(|v| v == name) {
                    Some(i) => Ok(LaurentPoly::var(i)),
                    None => Err(ExprError {
                        position: start,
                        message: format!("undeclared variable `{name}`"),
                    }),
                }
            }
            Some(_) => Err(self.err("expected a number, `z`, a variable or `(`")),
            None => Err(self.err("unexpected end of expression")),
        }
    }
}
