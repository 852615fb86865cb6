//! Literal grammar for exact reals and its canonical rendering.
//!
//! ```text
//! literal := "dec:" decimal ["@" bits] | expr
//! expr    := term (("+" | "-") term)*
//! term    := unary (("*" | "/") unary)*
//! unary   := ("+" | "-") unary | atom
//! atom    := integer | "sqrt(" integer ")" | "(" expr ")"
//! ```
//!
//! Expressions are evaluated exactly and must stay inside one quadratic field.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{ExactReal, IntervalReal, QuadSurd, Rational, DEFAULT_PRECISION_CAP};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug)]
pub struct ParseOptions {
    /// Refinement cap for `dec:` literals that omit `@bits`.
    pub precision_bits: u32,
    pub squarefree_bound: u64,
}

impl Default for ParseOptions {
    fn default() -> Self {
        ParseOptions {
            precision_bits: DEFAULT_PRECISION_CAP,
            squarefree_bound: super::DEFAULT_SQUAREFREE_BOUND,
        }
    }
}

pub fn parse_literal(text: &str, opts: &ParseOptions) -> Result<ExactReal> {
    let trimmed = text.trim_start();
    let lead = text.len() - trimmed.len();
    if let Some(rest) = trimmed.strip_prefix("dec:") {
        let rest = rest.trim_end();
        let (digits, bits) = match rest.split_once('@') {
            Some((d, b)) => {
                let pos = lead + 4 + d.len() + 1;
                let bits: u32 = b.parse().map_err(|_| Error::Parse {
                    pos,
                    msg: "expected precision bits after '@'".into(),
                })?;
                if bits == 0 {
                    return Err(Error::Parse {
                        pos,
                        msg: "precision must be positive".into(),
                    });
                }
                (d, bits)
            }
            None => (rest, opts.precision_bits),
        };
        return IntervalReal::from_decimal(digits, bits)
            .map(ExactReal::Interval)
            .map_err(|e| match e {
                Error::Parse { pos, msg } => Error::Parse {
                    pos: pos + lead + 4,
                    msg,
                },
                other => other,
            });
    }
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        opts,
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(v)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    opts: &'a ParseOptions,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse {
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

    fn eat(&mut self, ch: u8) -> bool {
        if self.peek() == Some(ch) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn lift(&self, at: usize, r: Result<ExactReal>) -> Result<ExactReal> {
        r.map_err(|e| match e {
            Error::Parse { .. } => e,
            other => Error::Parse {
                pos: at,
                msg: other.to_string(),
            },
        })
    }

    fn expr(&mut self) -> Result<ExactReal> {
        let mut acc = self.term()?;
        loop {
            let at = self.pos;
            if self.eat(b'+') {
                let rhs = self.term()?;
                acc = self.lift(at, acc.add(&rhs))?;
            } else if self.eat(b'-') {
                let rhs = self.term()?;
                acc = self.lift(at, acc.sub(&rhs))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<ExactReal> {
        let mut acc = self.unary()?;
        loop {
            let at = self.pos;
            if self.eat(b'*') {
                let rhs = self.unary()?;
                acc = self.lift(at, acc.mul(&rhs))?;
            } else if self.eat(b'/') {
                let rhs = self.unary()?;
                acc = self.lift(at, acc.div(&rhs))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<ExactReal> {
        if self.eat(b'-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<ExactReal> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => Ok(ExactReal::from(self.integer()?)),
            Some(b's') if self.src[self.pos..].starts_with(b"sqrt") => {
                self.pos += 4;
                if !self.eat(b'(') {
                    return Err(self.error("expected '(' after sqrt"));
                }
                self.skip_ws();
                let at = self.pos;
                let n = self.integer()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                let v = QuadSurd::with_bound(
                    BigInt::zero(),
                    BigInt::one(),
                    BigInt::one(),
                    n,
                    self.opts.squarefree_bound,
                );
                self.lift(at, v)
            }
            Some(_) => Err(self.error("expected integer, sqrt(...) or '('")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        digits.parse().map_err(|_| Error::Parse {
            pos: start,
            msg: "invalid integer".into(),
        })
    }
}

/// `n` for integers, `n/d` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub(crate) fn format_surd(s: &QuadSurd) -> String {
    let root = if s.b().abs().is_one() {
        format!("sqrt({})", s.d())
    } else {
        format!("{}*sqrt({})", s.b().abs(), s.d())
    };
    let sign = if s.b().is_negative() { "-" } else { "+" };
    let num = if s.a().is_zero() {
        if s.b().is_negative() {
            format!("-{root}")
        } else {
            root
        }
    } else {
        format!("{}{}{}", s.a(), sign, root)
    };
    if s.c().is_one() {
        num
    } else if s.a().is_zero() {
        format!("{}/{}", num, s.c())
    } else {
        format!("({})/{}", num, s.c())
    }
}
