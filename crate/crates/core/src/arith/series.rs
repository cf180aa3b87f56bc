use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{format_rational, ArithError, Result};

/// Univariate power series known exactly through degree `trunc`.
///
/// Binary operations return the smaller of the two truncations; asking for a
/// coefficient past the truncation is an error rather than an implicit zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SeriesWire", into = "SeriesWire")]
pub struct PowerSeries {
    var: String,
    coeffs: Vec<BigRational>,
}

#[derive(Serialize, Deserialize)]
struct SeriesWire {
    var: String,
    trunc: usize,
    #[serde(with = "crate::arith::serde_rational::vec")]
    coeffs: Vec<BigRational>,
}

impl TryFrom<SeriesWire> for PowerSeries {
    type Error = String;

    fn try_from(w: SeriesWire) -> std::result::Result<Self, String> {
        if w.coeffs.len() != w.trunc + 1 {
            return Err(format!(
                "coeffs has length {} but trunc is {}",
                w.coeffs.len(),
                w.trunc
            ));
        }
        Ok(PowerSeries {
            var: w.var,
            coeffs: w.coeffs,
        })
    }
}

impl From<PowerSeries> for SeriesWire {
    fn from(s: PowerSeries) -> Self {
        SeriesWire {
            var: s.var,
            trunc: s.coeffs.len() - 1,
            coeffs: s.coeffs,
        }
    }
}

/// Selects the direction of [`series_exp_log`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpLog {
    Exp,
    Log,
}

impl PowerSeries {
    /// Builds a series from its coefficients `c_0..=c_N`; the truncation is `N`.
    pub fn new(var: impl Into<String>, coeffs: Vec<BigRational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(ArithError::Empty);
        }
        Ok(PowerSeries {
            var: var.into(),
            coeffs,
        })
    }

    pub fn from_ints(var: impl Into<String>, coeffs: &[i64]) -> Result<Self> {
        Self::new(var, coeffs.iter().map(|&c| super::int(c)).collect())
    }

    pub fn from_fn(var: impl Into<String>, trunc: usize, f: impl FnMut(usize) -> BigRational) -> Self {
        PowerSeries {
            var: var.into(),
            coeffs: (0..=trunc).map(f).collect(),
        }
    }

    pub fn zero(var: impl Into<String>, trunc: usize) -> Self {
        Self::from_fn(var, trunc, |_| BigRational::zero())
    }

    pub fn one(var: impl Into<String>, trunc: usize) -> Self {
        Self::constant(var, trunc, BigRational::one())
    }

    pub fn constant(var: impl Into<String>, trunc: usize, c: BigRational) -> Self {
        let mut s = Self::zero(var, trunc);
        s.coeffs[0] = c;
        s
    }

    /// The series `z` itself.
    pub fn variable(var: impl Into<String>, trunc: usize) -> Self {
        let mut s = Self::zero(var, trunc);
        if trunc >= 1 {
            s.coeffs[1] = BigRational::one();
        }
        s
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn trunc(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigRational> {
        self.coeffs
    }

    pub fn coeff(&self, index: usize) -> Result<&BigRational> {
        self.coeffs.get(index).ok_or(ArithError::BeyondTruncation {
            index,
            trunc: self.trunc(),
        })
    }

    pub fn constant_term(&self) -> &BigRational {
        &self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn with_var(mut self, var: impl Into<String>) -> Self {
        self.var = var.into();
        self
    }

    /// Drops coefficients above `trunc`.
    pub fn truncate(&self, trunc: usize) -> Result<Self> {
        if trunc > self.trunc() {
            return Err(ArithError::BeyondTruncation {
                index: trunc,
                trunc: self.trunc(),
            });
        }
        Ok(PowerSeries {
            var: self.var.clone(),
            coeffs: self.coeffs[..=trunc].to_vec(),
        })
    }

    fn check_var(&self, other: &Self) -> Result<()> {
        if self.var != other.var {
            return Err(ArithError::VariableMismatch {
                left: self.var.clone(),
                right: other.var.clone(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_var(other)?;
        let n = self.trunc().min(other.trunc());
        Ok(Self::from_fn(self.var.clone(), n, |i| &self.coeffs[i] + &other.coeffs[i]))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_var(other)?;
        let n = self.trunc().min(other.trunc());
        Ok(Self::from_fn(self.var.clone(), n, |i| &self.coeffs[i] - &other.coeffs[i]))
    }

    pub fn neg(&self) -> Self {
        Self::from_fn(self.var.clone(), self.trunc(), |i| -&self.coeffs[i])
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_fn(self.var.clone(), self.trunc(), |i| &self.coeffs[i] * c)
    }

    /// Cauchy product truncated to the smaller truncation.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_var(other)?;
        let n = self.trunc().min(other.trunc());
        Ok(Self::from_fn(self.var.clone(), n, |k| {
            let mut acc = BigRational::zero();
            for i in 0..=k {
                let (a, b) = (&self.coeffs[i], &other.coeffs[k - i]);
                if !a.is_zero() && !b.is_zero() {
                    acc += a * b;
                }
            }
            acc
        }))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.var.clone(), self.trunc());
        for _ in 0..e {
            acc = acc.mul(self).expect("same variable");
        }
        acc
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(ArithError::NotInvertible);
        }
        let inv0 = c0.recip();
        let n = self.trunc();
        let mut out: Vec<BigRational> = Vec::with_capacity(n + 1);
        out.push(inv0.clone());
        for k in 1..=n {
            let mut acc = BigRational::zero();
            for i in 1..=k {
                if !self.coeffs[i].is_zero() {
                    acc += &self.coeffs[i] * &out[k - i];
                }
            }
            out.push(-acc * &inv0);
        }
        Ok(PowerSeries {
            var: self.var.clone(),
            coeffs: out,
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.mul(&other.inverse()?)
    }

    /// `z d/dz`, which keeps the truncation.
    pub fn theta(&self) -> Self {
        Self::from_fn(self.var.clone(), self.trunc(), |i| {
            &self.coeffs[i] * BigRational::from_integer(BigInt::from(i))
        })
    }

    /// `d/dz`; the result is known one degree less far.
    pub fn derivative(&self) -> Self {
        if self.trunc() == 0 {
            return Self::zero(self.var.clone(), 0);
        }
        Self::from_fn(self.var.clone(), self.trunc() - 1, |i| {
            &self.coeffs[i + 1] * BigRational::from_integer(BigInt::from(i + 1))
        })
    }

    /// `∫_0^z`; the result is known one degree further.
    pub fn integral(&self) -> Self {
        Self::from_fn(self.var.clone(), self.trunc() + 1, |i| {
            if i == 0 {
                BigRational::zero()
            } else {
                &self.coeffs[i - 1] / BigRational::from_integer(BigInt::from(i))
            }
        })
    }

    /// Multiplies by `z^k`; the low coefficients are exact zeros so the
    /// truncation grows by `k`.
    pub fn shift_up(&self, k: usize) -> Self {
        Self::from_fn(self.var.clone(), self.trunc() + k, |i| {
            if i < k {
                BigRational::zero()
            } else {
                self.coeffs[i - k].clone()
            }
        })
    }

    /// Divides by `z^k`; the first `k` coefficients must vanish.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        if k > self.trunc() {
            return Err(ArithError::BeyondTruncation {
                index: k,
                trunc: self.trunc(),
            });
        }
        if let Some(index) = (0..k).find(|&i| !self.coeffs[i].is_zero()) {
            return Err(ArithError::NonzeroLowCoefficient { shift: k, index });
        }
        Ok(Self::from_fn(self.var.clone(), self.trunc() - k, |i| {
            self.coeffs[i + k].clone()
        }))
    }

    /// Formal exponential; needs a zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(ArithError::ConstantTerm {
                op: "exp",
                expected: "0",
                found: format_rational(&self.coeffs[0]),
            });
        }
        let n = self.trunc();
        let mut g: Vec<BigRational> = Vec::with_capacity(n + 1);
        g.push(BigRational::one());
        for k in 1..=n {
            let mut acc = BigRational::zero();
            for i in 1..=k {
                if !self.coeffs[i].is_zero() {
                    acc += &self.coeffs[i] * &g[k - i] * BigInt::from(i);
                }
            }
            g.push(acc / BigInt::from(k));
        }
        Ok(PowerSeries {
            var: self.var.clone(),
            coeffs: g,
        })
    }

    /// Formal logarithm; needs constant term one.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(ArithError::ConstantTerm {
                op: "log",
                expected: "1",
                found: format_rational(&self.coeffs[0]),
            });
        }
        let n = self.trunc();
        let mut g: Vec<BigRational> = Vec::with_capacity(n + 1);
        g.push(BigRational::zero());
        for k in 1..=n {
            // k g_k = k f_k - sum_{i=1}^{k-1} i g_i f_{k-i}
            let mut acc = &self.coeffs[k] * BigInt::from(k);
            for i in 1..k {
                if !self.coeffs[k - i].is_zero() {
                    acc -= &g[i] * &self.coeffs[k - i] * BigInt::from(i);
                }
            }
            g.push(acc / BigInt::from(k));
        }
        Ok(PowerSeries {
            var: self.var.clone(),
            coeffs: g,
        })
    }

    /// `self(inner(t))`; `inner` must have zero constant term. The result uses
    /// the variable of `inner`.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(ArithError::ConstantTerm {
                op: "compose",
                expected: "0",
                found: format_rational(&inner.coeffs[0]),
            });
        }
        let n = self.trunc().min(inner.trunc());
        let inner = inner.truncate(n)?;
        let mut acc = PowerSeries::constant(inner.var.clone(), n, self.coeffs[n].clone());
        for i in (0..n).rev() {
            acc = acc.mul(&inner)?;
            acc.coeffs[0] += &self.coeffs[i];
        }
        Ok(acc)
    }

    /// Compositional inverse via Lagrange inversion:
    /// `[t^n] g = (1/n) [w^{n-1}] (w / a(w))^n`.
    pub fn revert(&self) -> Result<Self> {
        let n = self.trunc();
        if n == 0 || !self.coeffs[0].is_zero() || self.coeffs[1].is_zero() {
            return Err(ArithError::NotRevertible);
        }
        // a(w)/w known through degree n-1
        let quotient = self.shift_down(1)?;
        let h = quotient.inverse()?;
        let mut out = vec![BigRational::zero(); n + 1];
        let mut power = PowerSeries::one(self.var.clone(), n - 1);
        for k in 1..=n {
            power = power.mul(&h)?;
            out[k] = &power.coeffs[k - 1] / BigInt::from(k);
        }
        Ok(PowerSeries {
            var: self.var.clone(),
            coeffs: out,
        })
    }

    /// Evaluates the polynomial part at a rational point.
    pub fn eval_polynomial(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }
}

impl PowerSeries {
    /// The known coefficients as a polynomial, without the order term.
    pub fn polynomial_string(&self) -> String {
        let mut out = String::new();
        self.write_terms(&mut out).expect("writing to a String");
        out
    }

    fn write_terms(&self, f: &mut impl std::fmt::Write) -> std::fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => self.var.clone(),
                _ => format!("{}^{}", self.var, i),
            };
            let text = format_rational(c);
            let (sign, mag) = match text.strip_prefix('-') {
                Some(m) => ("-", m.to_string()),
                None => ("+", text),
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (mono.is_empty(), mag == "1") {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{mono}")?,
                (false, false) => write!(f, "{mag}*{mono}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl std::fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.write_terms(f)?;
        write!(f, " + O({}^{})", self.var, self.trunc() + 1)
    }
}

/// Cauchy product truncated to `min(trunc_a, trunc_b)`.
pub fn series_mul(a: &PowerSeries, b: &PowerSeries) -> Result<PowerSeries> {
    a.mul(b)
}

/// Formal `exp` (needs `a(0) = 0`) or `log` (needs `a(0) = 1`).
pub fn series_exp_log(a: &PowerSeries, mode: ExpLog) -> Result<PowerSeries> {
    match mode {
        ExpLog::Exp => a.exp(),
        ExpLog::Log => a.log(),
    }
}

/// Compositional inverse `g` with `a(g(q)) = q` through the truncation.
pub fn series_revert(a: &PowerSeries) -> Result<PowerSeries> {
    a.revert()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn s(c: &[i64]) -> PowerSeries {
        PowerSeries::from_ints("z", c).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(s(&[1, 1, 0, 0]).mul(&s(&[1, -1, 0, 0])).unwrap(), s(&[1, 0, -1, 0]));
    }

    #[test]
    fn geometric_times_one_minus_z() {
        let geo = s(&[1; 8]);
        assert_eq!(geo.mul(&s(&[1, -1, 0, 0, 0, 0, 0, 0])).unwrap(), s(&[1, 0, 0, 0, 0, 0, 0, 0]));
    }

    #[test]
    fn product_uses_smaller_truncation() {
        let p = s(&[1, 2, 3, 4]).mul(&s(&[1, 1])).unwrap();
        assert_eq!(p.trunc(), 1);
        assert!(matches!(p.coeff(2), Err(ArithError::BeyondTruncation { index: 2, trunc: 1 })));
    }

    #[test]
    fn quartic_period_squared() {
        // b_0 = 1, b_1 = 48 for (4m)!(2m)!/(m!)^6
        let phi = s(&[1, 48]);
        assert_eq!(phi.mul(&phi).unwrap().coeff(1).unwrap(), &int(96));
    }

    #[test]
    fn variable_mismatch_is_an_error() {
        let a = s(&[1, 1]);
        let b = PowerSeries::from_ints("q", &[1, 1]).unwrap();
        assert!(matches!(a.mul(&b), Err(ArithError::VariableMismatch { .. })));
    }

    #[test]
    fn exp_and_log_basics() {
        assert_eq!(s(&[0, 0, 0]).exp().unwrap(), s(&[1, 0, 0]));
        let log = s(&[1, 1, 0, 0, 0]).log().unwrap();
        let expected: Vec<_> = vec![int(0), int(1), rat(-1, 2), rat(1, 3), rat(-1, 4)];
        assert_eq!(log.coeffs(), &expected[..]);
        let f = s(&[1, 3, 5, 0, 0, 0]);
        assert_eq!(f.log().unwrap().exp().unwrap(), f);
        assert!(s(&[1, 1]).exp().is_err());
        assert!(s(&[2, 1]).log().is_err());
    }

    #[test]
    fn reversion_of_z_plus_z2() {
        // Lagrange inversion: [q^n] = (-1)^{n-1} Catalan(n-1)
        let g = s(&[0, 1, 1, 0, 0, 0, 0]).revert().unwrap();
        let catalan = [1i64, 1, 2, 5, 14, 42];
        for n in 1..=6 {
            let sign = if n % 2 == 1 { 1 } else { -1 };
            assert_eq!(g.coeff(n).unwrap(), &int(sign * catalan[n - 1]));
        }
        assert_eq!(s(&[0, 1, 0, 0]).revert().unwrap(), s(&[0, 1, 0, 0]));
        assert!(s(&[1, 1, 0]).revert().is_err());
        assert!(s(&[0, 0, 1]).revert().is_err());
    }

    #[test]
    fn shift_and_integral() {
        let f = s(&[0, 0, 3, 4]);
        assert_eq!(f.shift_down(2).unwrap(), s(&[3, 4]));
        assert!(f.shift_down(3).is_err());
        assert_eq!(s(&[3, 4]).shift_up(2), f);
        assert_eq!(s(&[2, 2]).integral(), s(&[0, 2, 1]));
        assert_eq!(s(&[1, 1, 1]).theta(), s(&[0, 1, 2]));
    }

    #[test]
    fn json_shape() {
        let json = serde_json::to_value(s(&[1, 2])).unwrap();
        assert_eq!(json, serde_json::json!({"var": "z", "trunc": 1, "coeffs": ["1", "2"]}));
        let back: PowerSeries = serde_json::from_value(json).unwrap();
        assert_eq!(back, s(&[1, 2]));
        let bad = serde_json::json!({"var": "z", "trunc": 3, "coeffs": ["1"]});
        assert!(serde_json::from_value::<PowerSeries>(bad).is_err());
    }
}
