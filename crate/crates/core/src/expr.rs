//! A small expression language for generating functions in `t`.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-' factor | base ('^' uint)?
//! base   := 't' | uint ('/' uint)? | '(' expr ')'
//! ```
//!
//! A `/` directly followed by an integer after an integer literal forms a
//! rational constant, so `1/2` is the constant one half while `1/(2)` is a
//! quotient. Unary minus binds looser than `^`: `-t^2` is `-(t^2)`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};
use crate::series::Series;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Const(Rational),
    Var,
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

const FACTOR_START: [&str; 4] = ["'('", "'-'", "'t'", "integer"];

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

    fn fail<T>(&mut self, expected: &[&str]) -> Result<T> {
        self.skip_ws();
        Err(Error::Syntax {
            offset: self.pos,
            expected: expected.iter().map(|s| s.to_string()).collect(),
        })
    }

    fn uint(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Some(digits.parse().expect("nonempty digit run"))
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(b'-') => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                Some(b'/') => {
                    self.pos += 1;
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.factor()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let base = self.base()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let at = {
            self.skip_ws();
            self.pos
        };
        match self.uint() {
            Some(e) => match u32::try_from(e) {
                Ok(e) => Ok(Expr::Pow(Box::new(base), e)),
                Err(_) => Err(Error::Syntax {
                    offset: at,
                    expected: vec!["exponent below 2^32".into()],
                }),
            },
            None => self.fail(&["integer exponent"]),
        }
    }

    fn base(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b't') => {
                self.pos += 1;
                Ok(Expr::Var)
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.fail(&["')'", "'+'", "'-'", "'*'", "'/'", "'^'"]);
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.uint().expect("digit present");
                let save = self.pos;
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                        let den_at = self.pos;
                        let den = self.uint().expect("digit present");
                        if den.is_zero() {
                            return Err(Error::Syntax {
                                offset: den_at,
                                expected: vec!["nonzero denominator".into()],
                            });
                        }
                        return Ok(Expr::Const(Rational::new(num, den)));
                    }
                }
                self.pos = save;
                Ok(Expr::Const(Rational::from_integer(num)))
            }
            _ => self.fail(&FACTOR_START),
        }
    }
}

pub fn parse(text: &str) -> Result<Expr> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.fail(&["'+'", "'-'", "'*'", "'/'", "'^'", "end of input"]);
    }
    Ok(e)
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(c) if c.is_negative() => write!(f, "-({})", format_rational(&-c)),
            Expr::Const(c) => write!(f, "{}", format_rational(c)),
            Expr::Var => write!(f, "t"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Neg(a) => write!(f, "-({a})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Div(a, b) if matches!(**b, Expr::Const(_)) => write!(f, "({a} / ({b}))"),
            Expr::Div(a, b) => write!(f, "({a} / {b})"),
            Expr::Pow(a, e) => write!(f, "({a})^{e}"),
        }
    }
}

fn eval_at(e: &Expr, w: usize) -> Result<Series> {
    Ok(match e {
        Expr::Const(c) => Series::constant(c.clone(), w),
        Expr::Var => Series::t(w),
        Expr::Add(a, b) => &eval_at(a, w)? + &eval_at(b, w)?,
        Expr::Sub(a, b) => &eval_at(a, w)? - &eval_at(b, w)?,
        Expr::Neg(a) => -&eval_at(a, w)?,
        Expr::Mul(a, b) => &eval_at(a, w)? * &eval_at(b, w)?,
        Expr::Div(a, b) => eval_at(a, w)?.div(&eval_at(b, w)?)?,
        Expr::Pow(a, k) => eval_at(a, w)?.pow(*k),
    })
}

/// Evaluates `e` as a power series known exactly through degree `trunc`.
///
/// Quotients lose precision at the order of their denominators, so the
/// expression is evaluated at a larger working truncation when needed.
pub fn eval_series(e: &Expr, trunc: usize) -> Result<Series> {
    let cap = 2 * trunc + 64;
    let mut w = trunc;
    loop {
        match eval_at(e, w) {
            Ok(s) if s.trunc() >= trunc => {
                return Ok(s.truncate(trunc).unrestricted().infer_parity())
            }
            Ok(s) if w >= cap => {
                return Err(Error::Trunc {
                    needed: trunc,
                    available: s.trunc(),
                })
            }
            Err(Error::ZeroDivisor { .. }) if w < cap => {}
            Err(err) => return Err(err),
            Ok(_) => {}
        }
        w = (2 * w + 8).min(cap);
    }
}

/// Parses and evaluates in one step.
pub fn series_of(text: &str, trunc: usize) -> Result<Series> {
    eval_series(&parse(text)?, trunc)
}
