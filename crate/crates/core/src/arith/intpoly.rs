use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Univariate polynomial with big-integer coefficients, lowest degree first.
/// Trailing zeros are always trimmed; the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c·x^e`.
    pub fn monomial(c: BigInt, e: usize) -> Self {
        let mut v = vec![BigInt::zero(); e + 1];
        v[e] = c;
        Self::new(v)
    }

    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn neg(&self) -> Self {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// `x d/dx`.
    pub fn theta(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Gcd of the coefficients (non-negative; zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Exact division of every coefficient by `d`.
    pub fn div_exact(&self, d: &BigInt) -> Self {
        IntPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| {
                    debug_assert!((c % d).is_zero());
                    c / d
                })
                .collect(),
        }
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading().is_some_and(Signed::is_negative) {
            c = -c;
        }
        self.div_exact(&c)
    }

    /// Pseudo-remainder `lc(b)^(deg a - deg b + 1)·a mod b`.
    pub fn pseudo_rem(&self, b: &Self) -> Self {
        let db = b.degree().expect("pseudo-division by zero polynomial");
        let lb = b.leading().expect("nonzero").clone();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.leading().expect("nonzero").clone();
            let shifted = Self::monomial(lr, dr - db).mul(b);
            r = r.scale(&lb).sub(&shifted);
        }
        r
    }

    /// Gcd over `Z[x]`, primitive with positive leading coefficient unless
    /// both inputs are constants, in which case the integer gcd is returned.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.normalized_sign();
        }
        if other.is_zero() {
            return self.normalized_sign();
        }
        let content = self.content().gcd(&other.content());
        let (mut a, mut b) = (self.primitive(), other.primitive());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive();
        }
        a.primitive().scale(&content)
    }

    fn normalized_sign(&self) -> Self {
        if self.leading().is_some_and(Signed::is_negative) {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Exact quotient `self / d` over `Z[x]`; `None` when `d` does not divide.
    pub fn div_poly(&self, d: &Self) -> Option<Self> {
        let dd = d.degree()?;
        let ld = d.leading()?.clone();
        let mut r = self.clone();
        let mut q = vec![BigInt::zero(); self.coeffs.len().saturating_sub(dd).max(1)];
        while let Some(dr) = r.degree() {
            if dr < dd {
                return None;
            }
            let lr = r.leading()?.clone();
            let (quot, rem) = lr.div_rem(&ld);
            if !rem.is_zero() {
                return None;
            }
            q[dr - dd] = quot.clone();
            r = r.sub(&Self::monomial(quot, dr - dd).mul(d));
        }
        Some(Self::new(q))
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{mag}*q")?,
                (_, true) => write!(f, "q^{i}")?,
                (_, false) => write!(f, "{mag}*q^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn gcd_of_products() {
        let a = p(&[1, 1]).mul(&p(&[-2, 0, 3]));
        let b = p(&[1, 1]).mul(&p(&[5, 7]));
        assert_eq!(a.gcd(&b), p(&[1, 1]));
        assert_eq!(p(&[4, 6]).gcd(&p(&[2])), p(&[2]));
        assert_eq!(p(&[0, -2]).gcd(&IntPoly::zero()), p(&[0, 2]));
    }

    #[test]
    fn exact_division() {
        let a = p(&[1, 1]).mul(&p(&[-2, 0, 3]));
        assert_eq!(a.div_poly(&p(&[1, 1])), Some(p(&[-2, 0, 3])));
        assert_eq!(a.div_poly(&p(&[2, 1])), None);
    }

    #[test]
    fn theta_scales_by_degree() {
        assert_eq!(p(&[5, 1, 1]).theta(), p(&[0, 1, 2]));
    }
}
