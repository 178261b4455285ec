//! Recursive-descent parser for polynomial expressions in `x`.
//!
//! ```text
//! expr   := term (('+'|'-') term)* ;
//! term   := factor ('*' factor)* ;
//! factor := ['-'] atom ['^' natural] ;
//! atom   := natural | natural '/' natural | 'x' | '(' expr ')' ;
//! ```
//!
//! A leading minus binds looser than `^`, so `-x^2` is `-(x^2)`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::polynomial::{Degree, Polynomial};
use super::rational::Rational;

/// Largest degree (and exponent literal) accepted by the parser and lowering.
pub const MAX_DEGREE: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Constant(Rational),
    Variable,
    Negate(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Subtract(Box<Expr>, Box<Expr>),
    Multiply(Box<Expr>, Box<Expr>),
    Power(Box<Expr>, u32),
}

impl Expr {
    pub fn constant(c: Rational) -> Self {
        Expr::Constant(c)
    }
    pub fn sum(l: Expr, r: Expr) -> Self {
        Expr::Add(Box::new(l), Box::new(r))
    }
    pub fn difference(l: Expr, r: Expr) -> Self {
        Expr::Subtract(Box::new(l), Box::new(r))
    }
    pub fn product(l: Expr, r: Expr) -> Self {
        Expr::Multiply(Box::new(l), Box::new(r))
    }
    pub fn pow(base: Expr, e: u32) -> Self {
        Expr::Power(Box::new(base), e)
    }
    pub fn negation(e: Expr) -> Self {
        Expr::Negate(Box::new(e))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExprError {
    #[error("empty expression")]
    Empty,
    #[error("syntax error at byte {offset}: found {found}, expected {}", Expected(.expected))]
    Syntax {
        offset: usize,
        found: String,
        expected: Vec<&'static str>,
    },
    #[error("invalid exponent at byte {offset}: exponent must be a natural literal no larger than {MAX_DEGREE}")]
    InvalidExponent { offset: usize },
    #[error("unknown identifier {name:?} at byte {offset}: the only variable is `x`")]
    UnknownIdentifier { offset: usize, name: String },
    #[error("zero denominator in constant at byte {offset}")]
    ZeroDenominator { offset: usize },
    #[error("degree {degree} exceeds the maximum of {MAX_DEGREE}")]
    DegreeTooLarge { degree: usize },
}

struct Expected<'a>(&'a [&'static str]);

impl fmt::Display for Expected<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            [one] => f.write_str(one),
            many => write!(f, "one of {}", many.join(", ")),
        }
    }
}

const ATOM_START: &[&str] = &["number", "'x'", "'('"];
const FACTOR_START: &[&str] = &["number", "'x'", "'('", "'-'"];

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn found(&mut self) -> String {
        match self.peek() {
            None => "end of input".to_string(),
            Some(_) => {
                let rest = std::str::from_utf8(&self.src[self.pos..]).unwrap_or("?");
                let ch = rest.chars().next().unwrap_or('?');
                format!("{ch:?}")
            }
        }
    }

    fn syntax(&mut self, expected: &[&'static str]) -> ExprError {
        let found = self.found();
        ExprError::Syntax {
            offset: self.pos,
            found,
            expected: expected.to_vec(),
        }
    }

    fn natural(&mut self) -> Option<(usize, &'a str)> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| {
            (
                start,
                std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits"),
            )
        })
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(b'+') {
                lhs = Expr::sum(lhs, self.term()?);
            } else if self.eat(b'-') {
                lhs = Expr::difference(lhs, self.term()?);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.factor()?;
        while self.eat(b'*') {
            lhs = Expr::product(lhs, self.factor()?);
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr, ExprError> {
        if self.peek().is_none() {
            return Err(self.syntax(FACTOR_START));
        }
        let negate = self.eat(b'-');
        let mut node = self.atom()?;
        if self.eat(b'^') {
            let at = {
                self.skip_ws();
                self.pos
            };
            let (_, digits) = self
                .natural()
                .ok_or(ExprError::InvalidExponent { offset: at })?;
            let e: u32 = digits
                .parse()
                .ok()
                .filter(|&e: &u32| e as usize <= MAX_DEGREE)
                .ok_or(ExprError::InvalidExponent { offset: at })?;
            node = Expr::pow(node, e);
        }
        Ok(if negate { Expr::negation(node) } else { node })
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.syntax(&["')'", "'+'", "'-'", "'*'", "'^'"]));
                }
                Ok(inner)
            }
            Some(b) if b.is_ascii_digit() => {
                let (_, num) = self.natural().expect("digit present");
                let num: BigInt = num.parse().expect("digits parse");
                if self.eat(b'/') {
                    let at = {
                        self.skip_ws();
                        self.pos
                    };
                    let Some((_, den)) = self.natural() else {
                        return Err(self.syntax(&["number"]));
                    };
                    let den: BigInt = den.parse().expect("digits parse");
                    if den.is_zero() {
                        return Err(ExprError::ZeroDenominator { offset: at });
                    }
                    Ok(Expr::Constant(Rational::new(num, den)))
                } else {
                    Ok(Expr::Constant(Rational::from_integer(num)))
                }
            }
            Some(b) if b.is_ascii_alphabetic() || b == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                if name == "x" {
                    Ok(Expr::Variable)
                } else {
                    Err(ExprError::UnknownIdentifier {
                        offset: start,
                        name: name.to_string(),
                    })
                }
            }
            _ => Err(self.syntax(ATOM_START)),
        }
    }
}

/// Parses `text` into an expression tree.
pub fn parse_expression(text: &str) -> Result<Expr, ExprError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    if p.peek().is_none() {
        return Err(ExprError::Empty);
    }
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(p.syntax(&["'+'", "'-'", "'*'", "'^'", "end of input"]));
    }
    Ok(e)
}

/// Exact expansion of an expression into canonical coefficient form.
///
/// Fails only when an intermediate or final degree would exceed
/// [`MAX_DEGREE`].
pub fn lower_to_polynomial(node: &Expr) -> Result<Polynomial, ExprError> {
    fn deg(p: &Polynomial) -> usize {
        match p.degree() {
            Degree::NegInfinity => 0,
            Degree::Finite(d) => d,
        }
    }
    fn check(degree: usize) -> Result<(), ExprError> {
        if degree > MAX_DEGREE {
            Err(ExprError::DegreeTooLarge { degree })
        } else {
            Ok(())
        }
    }
    Ok(match node {
        Expr::Constant(c) => Polynomial::constant(c.clone()),
        Expr::Variable => Polynomial::x(),
        Expr::Negate(e) => -lower_to_polynomial(e)?,
        Expr::Add(l, r) => lower_to_polynomial(l)? + lower_to_polynomial(r)?,
        Expr::Subtract(l, r) => lower_to_polynomial(l)? - lower_to_polynomial(r)?,
        Expr::Multiply(l, r) => {
            let (l, r) = (lower_to_polynomial(l)?, lower_to_polynomial(r)?);
            if !l.is_zero() && !r.is_zero() {
                check(deg(&l) + deg(&r))?;
            }
            l * r
        }
        Expr::Power(b, e) => {
            let b = lower_to_polynomial(b)?;
            if !b.is_zero() {
                check(deg(&b).saturating_mul(*e as usize))?;
            }
            b.pow(*e)
        }
    })
}

/// `parse_expression` followed by `lower_to_polynomial`.
pub fn parse_polynomial(text: &str) -> Result<Polynomial, ExprError> {
    lower_to_polynomial(&parse_expression(text)?)
}
