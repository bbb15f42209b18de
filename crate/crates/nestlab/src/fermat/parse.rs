//! Textual form of Fermat reals.
//!
//! Grammar, whitespace free between tokens:
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := rational ('*'? tpart)? | tpart
//! tpart    := 't' ('^' exponent)?
//! exponent := '(' signed ')' | signed
//! signed   := '-'? rational
//! rational := digits ('/' digits)?
//! ```
//!
//! The printer emits canonical form (`r + c*t^(p/q) + ...`, exponent 1 as a
//! bare `t`, unit coefficients elided), and parsing that output returns the
//! same value exactly.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{canonicalize, FermatReal, Rational, RawLittleOh, RawTerm};
use crate::error::{Error, Result};

/// Parses an expression into canonical form.
pub fn parse_fermat(text: &str) -> Result<FermatReal> {
    let raw = parse_raw(text)?;
    canonicalize(&raw)
}

fn parse_raw(text: &str) -> Result<RawLittleOh> {
    let mut p = Parser {
        bytes: text.as_bytes(),
        pos: 0,
    };
    p.skip_ws();
    let mut terms = Vec::new();
    let mut negative = p.eat(b'-');
    loop {
        p.skip_ws();
        terms.push(p.parse_term(negative)?);
        p.skip_ws();
        if p.eat(b'+') {
            negative = false;
        } else if p.eat(b'-') {
            negative = true;
        } else {
            break;
        }
    }
    if p.pos != p.bytes.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(RawLittleOh::new(terms))
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, msg: &str) -> Error {
        Error::parse(format!("{msg} at offset {}", self.pos))
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ') | Some(b'\t')) {
            self.pos += 1;
        }
    }

    fn parse_term(&mut self, negative: bool) -> Result<RawTerm> {
        let coefficient;
        let exponent;
        match self.peek() {
            Some(b'0'..=b'9') => {
                coefficient = self.parse_rational()?;
                self.skip_ws();
                let starred = self.eat(b'*');
                if starred {
                    self.skip_ws();
                }
                if starred || self.peek() == Some(b't') {
                    exponent = self.parse_tpart()?;
                } else {
                    exponent = Rational::zero();
                }
            }
            Some(b't') => {
                coefficient = Rational::one();
                exponent = self.parse_tpart()?;
            }
            _ => return Err(self.error("expected a rational or 't'")),
        }
        Ok(RawTerm {
            coefficient: if negative { -coefficient } else { coefficient },
            exponent,
        })
    }

    fn parse_tpart(&mut self) -> Result<Rational> {
        if !self.eat(b't') {
            return Err(self.error("expected 't'"));
        }
        if !self.eat(b'^') {
            return Ok(Rational::one());
        }
        if self.eat(b'(') {
            self.skip_ws();
            let e = self.parse_signed_rational()?;
            self.skip_ws();
            if !self.eat(b')') {
                return Err(self.error("expected ')'"));
            }
            Ok(e)
        } else {
            self.parse_signed_rational()
        }
    }

    fn parse_signed_rational(&mut self) -> Result<Rational> {
        let negative = self.eat(b'-');
        let r = self.parse_rational()?;
        Ok(if negative { -r } else { r })
    }

    fn parse_rational(&mut self) -> Result<Rational> {
        let numer = self.parse_integer()?;
        if self.eat(b'/') {
            let denom = self.parse_integer()?;
            if denom.is_zero() {
                return Err(self.error("zero denominator"));
            }
            Ok(BigRational::new(numer, denom))
        } else {
            Ok(BigRational::from_integer(numer))
        }
    }

    fn parse_integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected digits"));
        }
        let digits = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        digits
            .parse::<BigInt>()
            .map_err(|e| self.error(&format!("bad integer: {e}")))
    }
}

impl fmt::Display for FermatReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        if !self.standard_part().is_zero() || self.terms().is_empty() {
            write!(f, "{}", self.standard_part())?;
            wrote = true;
        }
        for term in self.terms() {
            let negative = term.coefficient.is_negative();
            if wrote {
                write!(f, "{}", if negative { " - " } else { " + " })?;
            } else if negative {
                write!(f, "-")?;
            }
            wrote = true;
            let magnitude = term.coefficient.abs();
            if !magnitude.is_one() {
                write!(f, "{magnitude}*")?;
            }
            if term.exponent.is_one() {
                write!(f, "t")?;
            } else {
                write!(f, "t^({})", term.exponent)?;
            }
        }
        Ok(())
    }
}
