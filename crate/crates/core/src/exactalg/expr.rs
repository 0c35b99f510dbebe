//! Polynomial expression trees: parsing, canonical printing, evaluation.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use super::poly::Poly;
use super::ring::Ring;
use super::Q;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(BigInt),
    Var(String),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExprError {
    #[error("at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown variable `{name}` (ring has {ring})")]
    UnknownVariable { name: String, ring: String },
    #[error("division by a non-constant expression `{0}`")]
    NonConstantDivisor(String),
    #[error("division by zero")]
    DivisionByZero,
}

impl Expr {
    /// Parses an entire string as one expression.
    pub fn parse(src: &str) -> Result<Expr, ExprError> {
        let (e, used) = Expr::parse_prefix(src)?;
        let rest = &src[used..];
        if let Some(off) = rest.find(|c: char| !c.is_whitespace()) {
            return Err(ExprError::Syntax {
                offset: used + off,
                message: format!("unexpected `{}`", &rest[off..].chars().next().unwrap()),
            });
        }
        Ok(e)
    }

    /// Parses the longest expression at the start of `src` and returns it
    /// with the number of bytes consumed (trailing whitespace excluded).
    pub fn parse_prefix(src: &str) -> Result<(Expr, usize), ExprError> {
        let mut p = Parser { src: src.as_bytes(), pos: 0 };
        let e = p.sum()?;
        Ok((e, p.pos))
    }

    pub fn var(name: &str) -> Expr {
        Expr::Var(name.to_string())
    }

    pub fn num(n: i64) -> Expr {
        Expr::Num(n.into())
    }

    /// Evaluates in `ring`; variables are looked up by name.
    pub fn eval(&self, ring: &Ring) -> Result<Poly, ExprError> {
        Ok(match self {
            Expr::Num(n) => Poly::constant(ring, Q::from_integer(n.clone())),
            Expr::Var(v) => match ring.index_of(v) {
                Some(i) => Poly::var(ring, i),
                None => {
                    return Err(ExprError::UnknownVariable { name: v.clone(), ring: ring.to_string() })
                }
            },
            Expr::Add(a, b) => a.eval(ring)? + b.eval(ring)?,
            Expr::Sub(a, b) => a.eval(ring)? - b.eval(ring)?,
            Expr::Mul(a, b) => a.eval(ring)? * b.eval(ring)?,
            Expr::Div(a, b) => {
                let d = b.eval(ring)?;
                let c = d.constant_value().ok_or_else(|| ExprError::NonConstantDivisor(b.to_string()))?;
                if c.is_zero() {
                    return Err(ExprError::DivisionByZero);
                }
                a.eval(ring)?.scale(&c.recip())
            }
            Expr::Neg(a) => -a.eval(ring)?,
            Expr::Pow(a, e) => a.eval(ring)?.pow(*e),
        })
    }

    /// Variables mentioned anywhere in the expression, in first-use order.
    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Expr::Num(_) => {}
            Expr::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Expr::Neg(a) | Expr::Pow(a, _) => a.collect_vars(out),
        }
    }

    fn prec(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            Expr::Num(_) | Expr::Var(_) => 5,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.prec() < min {
            f.write_str("(")?;
            fmt::Display::fmt(self, f)?;
            return f.write_str(")");
        }
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(n) => write!(f, "{n}"),
            Expr::Var(v) => f.write_str(v),
            Expr::Add(a, b) => {
                a.write_at(f, 1)?;
                f.write_str(" + ")?;
                b.write_at(f, 2)
            }
            Expr::Sub(a, b) => {
                a.write_at(f, 1)?;
                f.write_str(" - ")?;
                b.write_at(f, 2)
            }
            Expr::Mul(a, b) => {
                a.write_at(f, 2)?;
                f.write_str("*")?;
                b.write_at(f, 3)
            }
            Expr::Div(a, b) => {
                a.write_at(f, 2)?;
                f.write_str("/")?;
                b.write_at(f, 3)
            }
            Expr::Neg(a) => {
                f.write_str("-")?;
                a.write_at(f, 4)
            }
            Expr::Pow(a, e) => {
                a.write_at(f, 5)?;
                write!(f, "^{e}")
            }
        }
    }
}

impl From<&Poly> for Expr {
    /// Expression tree that prints exactly like the polynomial.
    fn from(p: &Poly) -> Expr {
        Expr::parse(&p.to_string()).expect("polynomial printing is parseable")
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    /// Next non-space byte without consuming it; `pos` is left untouched so a
    /// caller that stops here reports a consumed length without trailing space.
    fn peek(&self) -> Option<(u8, usize)> {
        let mut i = self.pos;
        while i < self.src.len() && self.src[i].is_ascii_whitespace() {
            i += 1;
        }
        self.src.get(i).map(|&b| (b, i))
    }

    fn err<T>(&self, offset: usize, message: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError::Syntax { offset, message: message.into() })
    }

    fn sum(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.product()?;
        while let Some((b @ (b'+' | b'-'), at)) = self.peek() {
            self.pos = at + 1;
            let rhs = self.product()?;
            lhs = if b == b'+' {
                Expr::Add(Box::new(lhs), Box::new(rhs))
            } else {
                Expr::Sub(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn product(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.unary()?;
        while let Some((b @ (b'*' | b'/'), at)) = self.peek() {
            self.pos = at + 1;
            let rhs = self.unary()?;
            lhs = if b == b'*' {
                Expr::Mul(Box::new(lhs), Box::new(rhs))
            } else {
                Expr::Div(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        if let Some((b'-', at)) = self.peek() {
            self.pos = at + 1;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ExprError> {
        let base = self.atom()?;
        if let Some((b'^', at)) = self.peek() {
            self.pos = at + 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return self.err(start, "expected a non-negative integer exponent");
            }
            let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
            let e = digits
                .parse::<BigInt>()
                .ok()
                .and_then(|n| n.to_u32())
                .ok_or(ExprError::Syntax { offset: start, message: "exponent too large".into() })?;
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        self.skip_ws();
        let start = self.pos;
        match self.src.get(self.pos) {
            Some(b'(') => {
                self.pos += 1;
                let e = self.sum()?;
                match self.peek() {
                    Some((b')', at)) => {
                        self.pos = at + 1;
                        Ok(e)
                    }
                    _ => self.err(self.pos, "expected `)`"),
                }
            }
            Some(c) if c.is_ascii_digit() => {
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                Ok(Expr::Num(digits.parse().unwrap()))
            }
            Some(c) if c.is_ascii_alphabetic() || *c == b'_' => {
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                Ok(Expr::Var(std::str::from_utf8(&self.src[start..self.pos]).unwrap().to_string()))
            }
            Some(_) => {
                let ch = std::str::from_utf8(&self.src[start..]).ok().and_then(|s| s.chars().next());
                self.err(start, format!("unexpected `{}` in expression", ch.unwrap_or('?')))
            }
            None => self.err(start, "expected an expression"),
        }
    }
}

/// Parses `src` as a polynomial in `ring`.
pub fn parse_poly(ring: &Ring, src: &str) -> Result<Poly, ExprError> {
    Expr::parse(src)?.eval(ring)
}
