//! Infix syntax for rational functions.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' '-'? int)?
//! atom  := int | var | '(' expr ')'
//! var   := 'x[' int ',' int ']' | 'x[' int ']' | 'q' | 'u'
//! ```
//!
//! `x[k,i]` uses the 1-based block label and index; `x[i]` is accepted when
//! the table has a single block. The printer emits this syntax and round-trips.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::{ArithError, Central, Poly, RatFunc, Rational, VarTable};

pub fn parse_ratfunc(table: &Arc<VarTable>, s: &str) -> Result<RatFunc, ArithError> {
    let mut p = Parser { table, src: s.as_bytes(), pos: 0 };
    let r = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(r)
}

/// Parse and require a Laurent polynomial.
pub fn parse_poly(table: &Arc<VarTable>, s: &str) -> Result<Poly, ArithError> {
    let r = parse_ratfunc(table, s)?;
    match r.as_poly() {
        Some(p) => Ok(p.clone()),
        None => Err(ArithError::Parse { pos: 0, msg: "expected a Laurent polynomial".into() }),
    }
}

struct Parser<'a> {
    table: &'a Arc<VarTable>,
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, msg: &str) -> ArithError {
        ArithError::Parse { pos: self.pos, msg: msg.to_string() }
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

    fn expect(&mut self, c: u8) -> Result<(), ArithError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn expr(&mut self) -> Result<RatFunc, ArithError> {
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

    fn term(&mut self) -> Result<RatFunc, ArithError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.unary()?;
            } else if self.eat(b'/') {
                let at = self.pos;
                let d = self.unary()?;
                acc = acc.div(&d).map_err(|_| ArithError::Parse { pos: at, msg: "division by zero".into() })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RatFunc, ArithError> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatFunc, ArithError> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let neg = self.eat(b'-');
        let at = self.pos;
        let k = self.int()?;
        let k: i32 = k.try_into().map_err(|_| ArithError::Parse { pos: at, msg: "exponent too large".into() })?;
        let k = if neg { -k } else { k };
        base.pow(k).map_err(|_| ArithError::Parse { pos: at, msg: "zero to a negative power".into() })
    }

    fn int(&mut self) -> Result<BigInt, ArithError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse"))
    }

    fn small(&mut self) -> Result<usize, ArithError> {
        let at = self.pos;
        self.int()?.try_into().map_err(|_| ArithError::Parse { pos: at, msg: "index too large".into() })
    }

    fn atom(&mut self) -> Result<RatFunc, ArithError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let r = self.expr()?;
                self.expect(b')')?;
                Ok(r)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.int()?;
                Ok(RatFunc::constant(self.table, Rational::from_integer(n)))
            }
            Some(b'q') | Some(b'u') => {
                let c = if self.src[self.pos] == b'q' { Central::Q } else { Central::U };
                let at = self.pos;
                self.pos += 1;
                match self.table.central(c) {
                    Some(v) => Ok(RatFunc::var(self.table, v)),
                    None => Err(ArithError::Parse { pos: at, msg: format!("no parameter {} in this table", c.name()) }),
                }
            }
            Some(b'x') => {
                let at = self.pos;
                self.pos += 1;
                self.expect(b'[')?;
                let a = self.small()?;
                let v = if self.eat(b',') {
                    let i = self.small()?;
                    self.expect(b']')?;
                    self.table
                        .block_position(a)
                        .filter(|&b| i >= 1 && i <= self.table.blocks()[b].len)
                        .map(|b| self.table.var(b, i - 1))
                } else {
                    self.expect(b']')?;
                    if self.table.blocks().len() == 1 && a >= 1 && a <= self.table.blocks()[0].len {
                        Some(self.table.var(0, a - 1))
                    } else {
                        None
                    }
                };
                v.map(|v| RatFunc::var(self.table, v))
                    .ok_or_else(|| ArithError::Parse { pos: at, msg: "unknown variable".into() })
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let table = self.table();
        for (k, (m, c)) in self.terms().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut factors: Vec<String> = Vec::new();
            for (v, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(table.name(v)),
                    _ => factors.push(format!("{}^{}", table.name(v), e)),
                }
            }
            if factors.is_empty() {
                write!(f, "{}", a)?;
            } else {
                if !a.is_one() {
                    write!(f, "{}*", a)?;
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num())
        } else {
            write!(f, "({})/({})", self.num(), self.den())
        }
    }
}
