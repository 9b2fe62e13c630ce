//! Text format for polynomials in T.
//!
//! Grammar: `term ('+' term)*` where a term is `coef '*' T '^' e`,
//! `coef '*' T`, `T^e`, `T`, or a bare coefficient. Coefficients are
//! decimal residues for prime fields; extension-field coefficients are a
//! digit, a unit power of the generator (`x`, `x^2`), or a parenthesized
//! polynomial in x (`(x+1)`, `(2*x+1)`). Canonical output uses descending
//! exponents, omits zero terms and unit coefficients, and prints the zero
//! polynomial as `0`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};

use super::Poly;

const MAX_EXPONENT: u64 = 10_000;

/// Parse the canonical polynomial grammar over the given field.
pub fn parse_poly(text: &str, field: &Arc<FieldSpec>) -> Result<Poly> {
    Parser {
        bytes: text.as_bytes(),
        pos: 0,
        field: Arc::clone(field),
    }
    .parse()
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    field: Arc<FieldSpec>,
}

impl Parser<'_> {
    fn parse(mut self) -> Result<Poly> {
        let mut terms: Vec<(FieldElement, usize)> = Vec::new();
        self.skip_ws();
        if self.peek().is_none() {
            return Err(Error::parse("empty input", 0));
        }
        loop {
            terms.push(self.term()?);
            self.skip_ws();
            match self.peek() {
                None => break,
                Some(b'+') => {
                    self.pos += 1;
                }
                Some(c) => {
                    return Err(Error::parse(
                        format!("unexpected character '{}'", c as char),
                        self.pos,
                    ))
                }
            }
        }
        let max_e = terms.iter().map(|(_, e)| *e).max().unwrap_or(0);
        let mut coeffs = vec![self.field.zero(); max_e + 1];
        for (c, e) in terms {
            coeffs[e] = &coeffs[e] + &c;
        }
        Ok(Poly::from_coeffs(&self.field, coeffs))
    }

    fn term(&mut self) -> Result<(FieldElement, usize)> {
        self.skip_ws();
        match self.peek() {
            Some(b'T') => {
                self.pos += 1;
                let e = self.maybe_power()?;
                Ok((self.field.one(), e))
            }
            Some(c) if c.is_ascii_digit() => {
                let coef = self.scalar_coef()?;
                self.finish_term(coef)
            }
            Some(b'x') => {
                let coef = self.x_monomial()?;
                self.finish_term(coef)
            }
            Some(b'(') => {
                if self.field.n() == 1 {
                    return Err(Error::parse(
                        "parenthesized coefficients need an extension field",
                        self.pos,
                    ));
                }
                self.pos += 1;
                let coef = self.x_poly()?;
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return Err(Error::parse("expected ')'", self.pos));
                }
                self.pos += 1;
                self.finish_term(coef)
            }
            Some(c) => Err(Error::parse(
                format!("unexpected character '{}'", c as char),
                self.pos,
            )),
            None => Err(Error::parse("expected a term", self.pos)),
        }
    }

    /// Optional `* T [^e]` after a coefficient.
    fn finish_term(&mut self, coef: FieldElement) -> Result<(FieldElement, usize)> {
        self.skip_ws();
        if self.peek() == Some(b'*') {
            self.pos += 1;
            self.skip_ws();
            if self.peek() != Some(b'T') {
                return Err(Error::parse("expected 'T' after '*'", self.pos));
            }
            self.pos += 1;
            let e = self.maybe_power()?;
            Ok((coef, e))
        } else {
            Ok((coef, 0))
        }
    }

    fn maybe_power(&mut self) -> Result<usize> {
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let (v, pos) = self.uint()?;
            if v > MAX_EXPONENT {
                return Err(Error::parse(format!("exponent {v} too large"), pos));
            }
            Ok(v as usize)
        } else {
            Ok(1)
        }
    }

    /// A decimal residue, rejected if it is not already reduced mod p.
    fn scalar_coef(&mut self) -> Result<FieldElement> {
        let (v, pos) = self.uint()?;
        if v >= self.field.p() {
            return Err(Error::parse(
                format!("coefficient {v} out of range for F_{}", self.field.p()),
                pos,
            ));
        }
        Ok(self.field.scalar(v))
    }

    /// `x` or `x^e`, evaluated in the field.
    fn x_monomial(&mut self) -> Result<FieldElement> {
        if self.field.n() == 1 {
            return Err(Error::parse(
                "generator 'x' is only valid in extension fields",
                self.pos,
            ));
        }
        debug_assert_eq!(self.peek(), Some(b'x'));
        self.pos += 1;
        let e = if self.peek() == Some(b'^') {
            self.pos += 1;
            let (v, pos) = self.uint()?;
            if v > MAX_EXPONENT {
                return Err(Error::parse(format!("exponent {v} too large"), pos));
            }
            v
        } else {
            1
        };
        Ok(self.field.generator()?.pow(e))
    }

    /// Sum of x-terms inside parentheses.
    fn x_poly(&mut self) -> Result<FieldElement> {
        let mut acc = self.field.zero();
        loop {
            self.skip_ws();
            let term = match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let scalar = self.scalar_coef()?;
                    self.skip_ws();
                    if self.peek() == Some(b'*') {
                        self.pos += 1;
                        self.skip_ws();
                        if self.peek() != Some(b'x') {
                            return Err(Error::parse("expected 'x' after '*'", self.pos));
                        }
                        &scalar * &self.x_monomial()?
                    } else {
                        scalar
                    }
                }
                Some(b'x') => self.x_monomial()?,
                _ => {
                    return Err(Error::parse(
                        "expected a coefficient term in x",
                        self.pos,
                    ))
                }
            };
            acc = &acc + &term;
            self.skip_ws();
            if self.peek() == Some(b'+') {
                self.pos += 1;
            } else {
                return Ok(acc);
            }
        }
    }

    fn uint(&mut self) -> Result<(u64, usize)> {
        let start = self.pos;
        let mut v: u64 = 0;
        let mut any = false;
        while let Some(c) = self.peek() {
            if !c.is_ascii_digit() {
                break;
            }
            any = true;
            v = v
                .checked_mul(10)
                .and_then(|v| v.checked_add((c - b'0') as u64))
                .ok_or_else(|| Error::parse("integer literal overflow", start))?;
            self.pos += 1;
        }
        if !any {
            return Err(Error::parse("expected an integer", start));
        }
        Ok((v, start))
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek() == Some(b' ') {
            self.pos += 1;
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let prime_field = self.field().n() == 1;
        let mut parts = Vec::new();
        for e in (0..self.coeffs().len()).rev() {
            let c = &self.coeffs()[e];
            if c.is_zero() {
                continue;
            }
            if e == 0 {
                if prime_field || c.is_bare_sum_safe() {
                    parts.push(c.to_string());
                } else {
                    parts.push(format!("({c})"));
                }
                continue;
            }
            let tpart = if e == 1 {
                "T".to_string()
            } else {
                format!("T^{e}")
            };
            if c.is_one() {
                parts.push(tpart);
            } else if prime_field || c.is_scalar() || c.is_unit_monomial() {
                parts.push(format!("{c}*{tpart}"));
            } else {
                parts.push(format!("({c})*{tpart}"));
            }
        }
        write!(f, "{}", parts.join("+"))
    }
}
