//! Recursive-descent reader for operator expressions.
//!
//! Grammar (whitespace ignored, `*` optional between factors):
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*'? factor)*
//! factor := atom ('^' digits)?
//! atom   := digits ('/' digits)? | 'D' | var | '(' expr ')'
//! ```

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{DOp, DOpError, Result};

const VARS: [char; 3] = ['z', 'q', 't'];

type Poly = BTreeMap<(usize, usize), BigRational>;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    var: Option<char>,
}

pub(super) fn parse(text: &str) -> Result<DOp> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        var: None,
    };
    let poly = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    let var = p.var.unwrap_or('z').to_string();
    Ok(DOp::from_terms(var, poly))
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> DOpError {
        DOpError::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("validated digits"))
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = Poly::new();
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -BigRational::one()
            }
            Some(b'+') => {
                self.pos += 1;
                BigRational::one()
            }
            _ => BigRational::one(),
        };
        loop {
            let t = self.term()?;
            for (k, c) in t {
                add_into(&mut acc, k, c * &sign);
            }
            match self.peek() {
                Some(b'+') => sign = BigRational::one(),
                Some(b'-') => sign = -BigRational::one(),
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                }
                Some(c) if c == b'(' || c == b'D' || c.is_ascii_digit() || VARS.contains(&(c as char)) => {}
                _ => return Ok(acc),
            }
            let f = self.factor()?;
            acc = mul(&acc, &f);
        }
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.digits()?;
            let e: u32 = e.try_into().map_err(|_| self.error("exponent too large"))?;
            let mut acc = constant(BigRational::one());
            for _ in 0..e {
                acc = mul(&acc, &base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'D') => {
                self.pos += 1;
                Ok(monomial(0, 1))
            }
            Some(c) if VARS.contains(&(c as char)) => {
                let c = c as char;
                match self.var {
                    Some(v) if v != c => return Err(self.error("mixed variable letters")),
                    _ => self.var = Some(c),
                }
                self.pos += 1;
                Ok(monomial(1, 0))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.digits()?;
                // `/` directly after a numerator always starts a denominator.
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let d = self.digits()?;
                    if d.is_zero() {
                        return Err(self.error("zero denominator"));
                    }
                    return Ok(constant(BigRational::new(n, d)));
                }
                Ok(constant(BigRational::from_integer(n)))
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

fn constant(c: BigRational) -> Poly {
    let mut p = Poly::new();
    add_into(&mut p, (0, 0), c);
    p
}

fn monomial(i: usize, j: usize) -> Poly {
    let mut p = Poly::new();
    p.insert((i, j), BigRational::one());
    p
}

fn add_into(p: &mut Poly, k: (usize, usize), c: BigRational) {
    if c.is_zero() {
        return;
    }
    let slot = p.entry(k).or_insert_with(BigRational::zero);
    *slot += c;
    if slot.is_zero() {
        p.remove(&k);
    }
}

fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (&(i1, j1), c1) in a {
        for (&(i2, j2), c2) in b {
            add_into(&mut out, (i1 + i2, j1 + j2), c1 * c2);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    #[test]
    fn rational_coefficients_and_implicit_products() {
        let p = parse("1/9 q^5 - 2/9q^2(D+1)").unwrap();
        assert_eq!(p.var(), "q");
        assert_eq!(p.coeff(5, 0), rat(1, 9));
        assert_eq!(p.coeff(2, 1), rat(-2, 9));
        assert_eq!(p.coeff(2, 0), rat(-2, 9));
    }

    #[test]
    fn powers_expand() {
        let p = parse("(D+1)^2").unwrap();
        assert_eq!(p.coeff(0, 2), int(1));
        assert_eq!(p.coeff(0, 1), int(2));
        assert_eq!(p.coeff(0, 0), int(1));
        assert_eq!(parse("2*z*D").unwrap(), parse("2zD").unwrap());
    }

    #[test]
    fn errors_carry_position() {
        assert!(matches!(parse("D + "), Err(DOpError::Parse { .. })));
        assert!(matches!(parse("z + q"), Err(DOpError::Parse { pos: 4, .. })));
        assert!(matches!(parse("(D"), Err(DOpError::Parse { .. })));
        assert!(matches!(parse("1/0"), Err(DOpError::Parse { .. })));
    }
}
