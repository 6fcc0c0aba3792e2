//! Text grammar for polynomials.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' uint)?
//! atom   := uint ('/' uint)? | ident | '(' expr ')' | '$' ident
//! ```
//!
//! `$ident` references are only accepted when the caller supplies a resolver.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{Coeff, Polynomial};
use super::ring::{valid_identifier, Domain, RingRef};
use crate::error::{Error, Result};

pub type Resolver<'a> = &'a dyn Fn(&str) -> Option<Polynomial>;

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    ring: &'a RingRef,
    resolver: Option<Resolver<'a>>,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) {
        if let Some(c) = self.src[self.pos..].chars().next() {
            self.pos += c.len_utf8();
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                '+' => {
                    self.bump();
                    acc = acc.add_ref(&self.term()?);
                }
                '-' => {
                    self.bump();
                    acc = acc.sub_ref(&self.term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                '*' => {
                    self.bump();
                    acc = acc.mul_ref(&self.unary()?);
                }
                '+' | '-' | ')' => break,
                _ => return self.err(format!("unexpected `{c}` (is a `*` missing?)")),
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some('-') => {
                self.bump();
                Ok(-self.unary()?)
            }
            Some('+') => self.err("unary `+` is not allowed"),
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.bump();
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                return self.err("expected a nonnegative integer exponent");
            }
            let e: u32 = match digits.parse() {
                Ok(e) => e,
                Err(_) => {
                    self.pos = start;
                    return self.err("exponent too large");
                }
            };
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> &'a str {
        let start = self.pos;
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_ascii_digit() {
                self.pos += 1;
            } else {
                break;
            }
        }
        &self.src[start..self.pos]
    }

    fn ident(&mut self) -> &'a str {
        let start = self.pos;
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_ascii_alphanumeric() || c == '_' {
                self.pos += 1;
            } else {
                break;
            }
        }
        &self.src[start..self.pos]
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let Some(c) = self.peek() else {
            return self.err("unexpected end of input");
        };
        if c.is_ascii_digit() {
            let num: BigInt = self.digits().parse().expect("digits");
            let mut value = BigRational::from_integer(num);
            if self.src[self.pos..].starts_with('/') {
                self.bump();
                let den = self.digits();
                if den.is_empty() {
                    return self.err("expected a denominator after `/`");
                }
                let den: BigInt = den.parse().expect("digits");
                if den.is_zero() {
                    return self.err("zero denominator");
                }
                value /= BigRational::from_integer(den);
            }
            if self.ring.domain() == Domain::Integers && !value.is_integer() {
                return Err(Error::RationalInIntegerRing(value.to_string()));
            }
            return Ok(Polynomial::constant(self.ring, value));
        }
        if c.is_ascii_alphabetic() {
            let start = self.pos;
            let name = self.ident();
            return match self.ring.index_of(name) {
                Some(i) => Ok(Polynomial::var(self.ring, i)),
                None => Err(Error::UnknownVariable { name: name.to_string(), pos: start }),
            };
        }
        match c {
            '(' => {
                self.bump();
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return self.err("expected `)`");
                }
                self.bump();
                Ok(inner)
            }
            '$' => {
                let start = self.pos;
                self.bump();
                let name = self.ident();
                let Some(resolver) = self.resolver else {
                    self.pos = start;
                    return self.err("`$` references are not allowed here");
                };
                if !valid_identifier(name) {
                    self.pos = start;
                    return self.err("expected a name after `$`");
                }
                match resolver(name) {
                    Some(p) if p.ring().spec() == self.ring.spec() => p.in_ring(self.ring),
                    Some(p) => Err(Error::RingMismatch(format!(
                        "`${name}` lives in {} but is used in {}",
                        p.ring(),
                        self.ring
                    ))),
                    None => Err(Error::UnknownVariable { name: format!("${name}"), pos: start }),
                }
            }
            _ => self.err(format!("unexpected `{c}`")),
        }
    }
}

fn run(text: &str, ring: &RingRef, resolver: Option<Resolver<'_>>) -> Result<Polynomial> {
    let mut p = Parser { src: text, pos: 0, ring, resolver };
    let out = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(out)
}

pub fn parse_poly(text: &str, ring: &RingRef) -> Result<Polynomial> {
    run(text, ring, None)
}

/// Like [`parse_poly`] but resolves `$name` atoms through `resolver`.
pub fn parse_poly_with(text: &str, ring: &RingRef, resolver: Resolver<'_>) -> Result<Polynomial> {
    run(text, ring, Some(resolver))
}

fn write_coeff(f: &mut fmt::Formatter<'_>, c: &Coeff) -> fmt::Result {
    if c.is_integer() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let ring = self.ring();
        for (k, t) in self.terms().iter().enumerate() {
            let neg = t.coeff.is_negative();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let c = t.coeff.abs();
            let mut first = true;
            if !c.is_one() || t.monomial.is_one() {
                write_coeff(f, &c)?;
                first = false;
            }
            for (i, &e) in t.monomial.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "{}", ring.var_name(i))?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}
