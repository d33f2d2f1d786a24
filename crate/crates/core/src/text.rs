//! Text form of polynomials: a signed sum of terms `c * x[i][j]^e * ...`
//! with rational coefficients `p/q`. Exponent 1 is omitted when printing.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::{format_monomial, Polynomial};
use crate::ring::{Ctx, Scalar};

fn format_scalar(c: &Scalar) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Polynomial {
    /// Terms are printed from the lexicographically largest monomial down.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().rev().enumerate() {
            let body = if m.is_one() {
                format_scalar(&c.abs())
            } else {
                format!("{} * {}", format_scalar(&c.abs()), format_monomial(self.ctx(), m))
            };
            match (k, c.is_negative()) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

impl Polynomial {
    /// Parses the text form. Parameters are referred to by name.
    pub fn parse(ctx: &Ctx, s: &str) -> Result<Polynomial> {
        Parser { src: s.as_bytes(), pos: 0, ctx }.polynomial()
    }

    /// SHA-256 of the text form, hex encoded.
    pub fn content_hash(&self) -> String {
        hex::encode(Sha256::digest(self.to_string().as_bytes()))
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ctx: &'a Ctx,
}

impl Parser<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
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

    fn expect(&mut self, b: u8) -> Result<()> {
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected `{}`", b as char))
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("nonempty digit string"))
    }

    fn small(&mut self) -> Result<usize> {
        let v = self.integer()?;
        match usize::try_from(v) {
            Ok(v) => Ok(v),
            Err(_) => self.err("number too large"),
        }
    }

    fn polynomial(&mut self) -> Result<Polynomial> {
        let mut terms: Vec<(Monomial, Scalar)> = Vec::new();
        let mut first = true;
        loop {
            let sign = match self.peek() {
                None if !first => break,
                None => return self.err("empty polynomial"),
                Some(b'+') => {
                    self.pos += 1;
                    1
                }
                Some(b'-') => {
                    self.pos += 1;
                    -1
                }
                Some(_) if first => 1,
                Some(c) => return self.err(format!("unexpected `{}`", c as char)),
            };
            first = false;
            let (m, c) = self.term()?;
            terms.push((m, if sign < 0 { -c } else { c }));
        }
        Polynomial::from_terms(self.ctx, terms)
    }

    fn term(&mut self) -> Result<(Monomial, Scalar)> {
        let mut coeff = Scalar::one();
        let mut exps: Vec<(usize, u32)> = Vec::new();
        loop {
            match self.peek() {
                Some(b) if b.is_ascii_digit() => {
                    let num = self.integer()?;
                    let mut c = BigRational::from_integer(num);
                    if self.peek() == Some(b'/') {
                        self.pos += 1;
                        let den = self.integer()?;
                        if den.is_zero() {
                            return self.err("zero denominator");
                        }
                        c /= BigRational::from_integer(den);
                    }
                    coeff *= c;
                }
                Some(b) if b.is_ascii_alphabetic() || b == b'_' => {
                    let v = self.variable()?;
                    let mut e = 1u32;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        e = match u32::try_from(self.small()?) {
                            Ok(e) => e,
                            Err(_) => return self.err("exponent too large"),
                        };
                    }
                    exps.push((v, e));
                }
                _ => return self.err("expected a coefficient or a variable"),
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok((Monomial::from_exponents(exps), coeff))
    }

    fn variable(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii identifier");
        if name == "x" {
            self.expect(b'[')?;
            let i = self.small()?;
            self.expect(b']')?;
            self.expect(b'[')?;
            let j = self.small()?;
            self.expect(b']')?;
            match self.ctx.var(i, j) {
                Ok(v) => Ok(v),
                Err(e) => self.err(e.to_string()),
            }
        } else {
            match self.ctx.param(name) {
                Some(v) => Ok(v),
                None => {
                    self.pos = start;
                    self.err(format!("unknown variable `{name}`"))
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Characteristic, RingContext};

    #[test]
    fn prints_leading_term_first() {
        let ctx = RingContext::new(2).unwrap();
        let p = Polynomial::parse(&ctx, "x[1][2]*x[2][1] - x[1][1]*x[2][2]").unwrap();
        assert_eq!(p.to_string(), "-1 * x[1][1] * x[2][2] + 1 * x[1][2] * x[2][1]");
        assert_eq!(Polynomial::zero(&ctx).to_string(), "0");
    }

    #[test]
    fn parses_fractions_powers_and_params() {
        let ctx = RingContext::with(2, Characteristic::Zero, ["c"]).unwrap();
        let p = Polynomial::parse(&ctx, "3/2 * x[1][1]^2 * c - 1/3 + 2*c*x[1][1]^2").unwrap();
        assert_eq!(p.to_string(), "7/2 * x[1][1]^2 * c - 1/3");
        assert_eq!(Polynomial::parse(&ctx, &p.to_string()).unwrap(), p);
    }

    #[test]
    fn parse_errors() {
        let ctx = RingContext::new(2).unwrap();
        assert!(Polynomial::parse(&ctx, "x[3][1]").is_err());
        assert!(Polynomial::parse(&ctx, "1/0").is_err());
        assert!(Polynomial::parse(&ctx, "y").is_err());
        assert!(Polynomial::parse(&ctx, "").is_err());
        assert!(Polynomial::parse(&ctx, "x[1][1] +").is_err());
    }

    #[test]
    fn hash_depends_on_text() {
        let ctx = RingContext::new(2).unwrap();
        let a = Polynomial::parse(&ctx, "x[1][1]").unwrap();
        let b = Polynomial::parse(&ctx, "x[2][2]").unwrap();
        assert_eq!(a.content_hash().len(), 64);
        assert_ne!(a.content_hash(), b.content_hash());
    }
}
