//! Differential operators `Σ c_{i,j} z^i D^j` with `D = z d/dz`.
//!
//! Coefficients sit to the left of the `D` powers. Operators act on power
//! series and log-series, can be recovered from series coefficients by exact
//! linear algebra ([`pf_fit`]), and convert to `d/dz` form for the Yukawa
//! coupling.

mod fit;
mod parse;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{binomial, format_rational, ArithError, LogSeries, PowerSeries};

pub use fit::{pf_fit, FitBounds};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DOpError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("cannot parse operator at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("series truncation {trunc} is below the operator z-degree {zdeg}")]
    TruncationTooShort { trunc: usize, zdeg: usize },
    #[error("fitting order {order}, z-degree {zdeg} needs truncation {need}, series has {have}")]
    InsufficientTerms {
        order: usize,
        zdeg: usize,
        need: usize,
        have: usize,
    },
    #[error("no annihilating operator with order <= {max_order} and z-degree <= {max_zdeg}")]
    NotFound { max_order: usize, max_zdeg: usize },
    #[error("ambiguous fit: nullspace of dimension {dim} at order {order}, z-degree {zdeg}")]
    Ambiguous { order: usize, zdeg: usize, dim: usize },
    #[error("cannot fit an operator to the zero series")]
    ZeroSeries,
    #[error("log degree {degree} exceeds operator order - 1 = {cap}")]
    LogDegree { degree: usize, cap: usize },
    #[error("operator and series use different variables: `{op}` vs `{series}`")]
    VariableMismatch { op: String, series: String },
}

pub type Result<T, E = DOpError> = std::result::Result<T, E>;

/// Differential operator in `D = z d/dz` form.
///
/// `terms[(i, j)]` is the coefficient of `z^i D^j`. Zero coefficients are
/// never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DOp {
    var: String,
    terms: BTreeMap<(usize, usize), BigRational>,
}

impl DOp {
    pub fn zero(var: impl Into<String>) -> Self {
        DOp {
            var: var.into(),
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(
        var: impl Into<String>,
        terms: impl IntoIterator<Item = ((usize, usize), BigRational)>,
    ) -> Self {
        let mut op = Self::zero(var);
        for ((i, j), c) in terms {
            op.add_term(i, j, c);
        }
        op
    }

    /// Parses expressions such as `D^4 - 16z(2D+1)^2(4D+1)(4D+3)`.
    ///
    /// Products are read with every power of the variable moved to the left
    /// of the `D` powers, which is how such operators are conventionally
    /// printed. Accepted variable letters are `z`, `q` and `t`.
    pub fn parse(text: &str) -> Result<Self> {
        parse::parse(text)
    }

    pub fn add_term(&mut self, i: usize, j: usize, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((i, j)).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn with_var(mut self, var: impl Into<String>) -> Self {
        self.var = var.into();
        self
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest power of `D`.
    pub fn order(&self) -> usize {
        self.terms.keys().map(|&(_, j)| j).max().unwrap_or(0)
    }

    /// Highest power of the variable.
    pub fn zdeg(&self) -> usize {
        self.terms.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }

    pub fn coeff(&self, i: usize, j: usize) -> BigRational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize), &BigRational)> {
        self.terms.iter()
    }

    /// `P_i(x) = Σ_j c_{i,j} x^j` evaluated at `x`.
    pub fn eval_part(&self, i: usize, x: &BigInt) -> BigRational {
        let mut acc = BigRational::zero();
        for (&(a, j), c) in self.terms.range((i, 0)..=(i, usize::MAX)) {
            debug_assert_eq!(a, i);
            acc += c * BigRational::from_integer(num_traits::pow(x.clone(), j));
        }
        acc
    }

    /// Coefficients of `P_i` as a polynomial in `D`, lowest degree first.
    pub fn part(&self, i: usize) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); self.order() + 1];
        for (&(_, j), c) in self.terms.range((i, 0)..=(i, usize::MAX)) {
            out[j] = c.clone();
        }
        out
    }

    /// The indicial polynomial `P_0`, lowest degree first.
    pub fn indicial(&self) -> Vec<BigRational> {
        self.part(0)
    }

    /// Leading term: highest `D` power, then lowest variable power.
    pub fn leading(&self) -> Option<((usize, usize), &BigRational)> {
        self.terms
            .iter()
            .max_by(|a, b| a.0 .1.cmp(&b.0 .1).then(b.0 .0.cmp(&a.0 .0)))
            .map(|(k, v)| (*k, v))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_terms(self.var.clone(), self.terms.iter().map(|(k, v)| (*k, v * c)))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(i, j), c) in &other.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-BigRational::one()))
    }

    /// Operator product `self ∘ other`, using `D^b z^c = z^c (D + c)^b`.
    pub fn compose(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.var.clone());
        for (&(a, b), c1) in &self.terms {
            for (&(c, d), c2) in &other.terms {
                // (D + c)^b = Σ_k C(b,k) c^(b-k) D^k
                for k in 0..=b {
                    let shift = BigInt::from(c).pow((b - k) as u32);
                    let w = BigRational::from_integer(binomial(b as u64, k as u64) * shift);
                    out.add_term(a + c, k + d, c1 * c2 * w);
                }
            }
        }
        out
    }

    /// `∂P/∂D`: each `D^j` becomes `j D^(j-1)`.
    pub fn d_derivative(&self) -> Self {
        Self::from_terms(
            self.var.clone(),
            self.terms
                .iter()
                .filter(|(&(_, j), _)| j > 0)
                .map(|(&(i, j), c)| ((i, j - 1), c * BigInt::from(j))),
        )
    }

    /// Scales to integer coefficients with content one and a positive
    /// leading term.
    pub fn canonical(&self) -> Self {
        if self.terms.is_empty() {
            return self.clone();
        }
        let lcm = crate::arith::denominator_lcm(self.terms.values());
        let ints: Vec<BigInt> = self
            .terms
            .values()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let g = ints
            .iter()
            .fold(BigInt::zero(), |acc, x| num_integer::Integer::gcd(&acc, x));
        let mut factor = BigRational::new(lcm, g);
        if self.leading().is_some_and(|(_, c)| c.is_negative()) {
            factor = -factor;
        }
        self.scale(&factor)
    }

    pub fn is_canonical(&self) -> bool {
        *self == self.canonical()
    }

    fn check_var(&self, var: &str) -> Result<()> {
        if self.var != var {
            return Err(DOpError::VariableMismatch {
                op: self.var.clone(),
                series: var.to_string(),
            });
        }
        Ok(())
    }

    /// Applies the operator to a power series: `z^i D^j z^m = m^j z^(m+i)`.
    pub fn apply(&self, f: &PowerSeries) -> Result<PowerSeries> {
        self.check_var(f.var())?;
        if f.trunc() < self.zdeg() {
            return Err(DOpError::TruncationTooShort {
                trunc: f.trunc(),
                zdeg: self.zdeg(),
            });
        }
        let zdeg = self.zdeg();
        let parts: Vec<Vec<BigRational>> = (0..=zdeg).map(|i| self.part(i)).collect();
        let coeffs = (0..=f.trunc())
            .map(|m| {
                let mut acc = BigRational::zero();
                for (i, part) in parts.iter().enumerate().take(m.min(zdeg) + 1) {
                    let src = &f.coeffs()[m - i];
                    if src.is_zero() {
                        continue;
                    }
                    acc += eval_poly(part, (m - i) as i64) * src;
                }
                acc
            })
            .collect();
        Ok(PowerSeries::new(f.var(), coeffs)?)
    }

    /// Applies the operator to a log-series. The log degree must not exceed
    /// `order - 1`.
    pub fn apply_log(&self, f: &LogSeries) -> Result<LogSeries> {
        self.check_var(f.var())?;
        let cap = self.order().saturating_sub(1);
        if f.log_degree() > cap {
            return Err(DOpError::LogDegree {
                degree: f.log_degree(),
                cap,
            });
        }
        if f.trunc() < self.zdeg() {
            return Err(DOpError::TruncationTooShort {
                trunc: f.trunc(),
                zdeg: self.zdeg(),
            });
        }
        let mut powers = vec![f.clone()];
        for j in 1..=self.order() {
            let next = powers[j - 1].theta();
            powers.push(next);
        }
        let zero = PowerSeries::zero(f.var().to_string(), f.trunc());
        let mut acc = LogSeries::from_series(zero);
        for (&(i, j), c) in &self.terms {
            let term = powers[j].scale(c).shift_up(i).truncate(f.trunc())?;
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    /// Coefficients `b_j(z)` of `Σ_j b_j(z) (d/dz)^j`, each lowest degree
    /// first, via `D^j = Σ_i S(j,i) z^i (d/dz)^i`.
    pub fn to_ddz_form(&self) -> Vec<Vec<BigRational>> {
        let order = self.order();
        let stirling = stirling2_table(order);
        let zmax = self.zdeg() + order;
        let mut out = vec![vec![BigRational::zero(); zmax + 1]; order + 1];
        for (&(a, j), c) in &self.terms {
            for (i, s) in stirling[j].iter().enumerate() {
                if !s.is_zero() {
                    out[i][a + i] += c * BigRational::from_integer(s.clone());
                }
            }
        }
        for poly in &mut out {
            while poly.len() > 1 && poly.last().is_some_and(Zero::is_zero) {
                poly.pop();
            }
        }
        out
    }

    /// Inverse of [`DOp::to_ddz_form`]. Every `z^p (d/dz)^i` must have `p >= i`.
    pub fn from_ddz_form(var: impl Into<String>, ddz: &[Vec<BigRational>]) -> Option<Self> {
        let mut op = Self::zero(var);
        for (i, poly) in ddz.iter().enumerate() {
            // z^i (d/dz)^i = D (D-1) ... (D-i+1)
            let falling = falling_factorial_poly(i);
            for (p, c) in poly.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let shift = p.checked_sub(i)?;
                for (j, s) in falling.iter().enumerate() {
                    op.add_term(shift, j, c * BigRational::from_integer(s.clone()));
                }
            }
        }
        Some(op)
    }
}

/// Evaluates a polynomial (lowest degree first) at an integer.
pub fn eval_poly(p: &[BigRational], x: i64) -> BigRational {
    let x = BigRational::from_integer(BigInt::from(x));
    p.iter().rev().fold(BigRational::zero(), |acc, c| acc * &x + c)
}

/// Stirling numbers of the second kind `S(j, i)` for `j <= n`.
fn stirling2_table(n: usize) -> Vec<Vec<BigInt>> {
    let mut s = vec![vec![BigInt::zero(); n + 1]; n + 1];
    s[0][0] = BigInt::one();
    for j in 1..=n {
        for i in 1..=j {
            s[j][i] = BigInt::from(i) * &s[j - 1][i] + &s[j - 1][i - 1];
        }
    }
    s
}

/// Coefficients of `x (x-1) ... (x-i+1)`, lowest degree first.
fn falling_factorial_poly(i: usize) -> Vec<BigInt> {
    let mut p = vec![BigInt::one()];
    for k in 0..i {
        let mut next = vec![BigInt::zero(); p.len() + 1];
        for (d, c) in p.iter().enumerate() {
            next[d + 1] += c;
            next[d] -= c * BigInt::from(k);
        }
        p = next;
    }
    p
}

impl fmt::Display for DOp {
    /// Groups terms by power of the variable: `D^4 - z*(1024*D^4 + ...)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for i in 0..=self.zdeg() {
            let part = self.part(i);
            let nonzero: Vec<(usize, &BigRational)> = part
                .iter()
                .enumerate()
                .rev()
                .filter(|(_, c)| !c.is_zero())
                .collect();
            if nonzero.is_empty() {
                continue;
            }
            let var = match i {
                0 => String::new(),
                1 => self.var.clone(),
                _ => format!("{}^{}", self.var, i),
            };
            let (sign, body) = if nonzero.len() == 1 {
                let (j, c) = nonzero[0];
                let neg = c.is_negative();
                let mag = c.abs();
                let d = dpow(j);
                let mut parts: Vec<String> = Vec::new();
                if !mag.is_one() || (d.is_empty() && var.is_empty()) {
                    parts.push(format_rational(&mag));
                }
                if !var.is_empty() {
                    parts.push(var.clone());
                }
                if !d.is_empty() {
                    parts.push(d);
                }
                (neg, parts.join("*"))
            } else {
                let poly = poly_in_d(&nonzero);
                if var.is_empty() {
                    (false, poly)
                } else {
                    (false, format!("{var}*({poly})"))
                }
            };
            if first {
                if sign {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if sign { "-" } else { "+" })?;
            }
            write!(f, "{body}")?;
            first = false;
        }
        Ok(())
    }
}

fn dpow(j: usize) -> String {
    match j {
        0 => String::new(),
        1 => "D".to_string(),
        _ => format!("D^{j}"),
    }
}

fn poly_in_d(terms: &[(usize, &BigRational)]) -> String {
    let mut s = String::new();
    for (k, (j, c)) in terms.iter().enumerate() {
        let mag = c.abs();
        let d = dpow(*j);
        let body = match (mag.is_one(), d.is_empty()) {
            (true, false) => d,
            (_, true) => format_rational(&mag),
            (false, false) => format!("{}*{}", format_rational(&mag), d),
        };
        if k == 0 {
            if c.is_negative() {
                s.push('-');
            }
        } else {
            s.push_str(if c.is_negative() { " - " } else { " + " });
        }
        s.push_str(&body);
    }
    s
}

#[derive(Serialize, Deserialize)]
struct TermWire {
    qdeg: usize,
    ddeg: usize,
    #[serde(with = "crate::arith::serde_rational")]
    coeff: BigRational,
}

#[derive(Serialize, Deserialize)]
struct DOpWire {
    #[serde(default = "default_var")]
    var: String,
    order: usize,
    terms: Vec<TermWire>,
}

fn default_var() -> String {
    "z".to_string()
}

impl Serialize for DOp {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DOpWire {
            var: self.var.clone(),
            order: self.order(),
            terms: self
                .terms
                .iter()
                .map(|(&(qdeg, ddeg), c)| TermWire {
                    qdeg,
                    ddeg,
                    coeff: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DOp {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = DOpWire::deserialize(d)?;
        let op = DOp::from_terms(w.var, w.terms.into_iter().map(|t| ((t.qdeg, t.ddeg), t.coeff)));
        if op.order() != w.order && !op.is_zero() {
            return Err(serde::de::Error::custom(format!(
                "declared order {} but terms have order {}",
                w.order,
                op.order()
            )));
        }
        Ok(op)
    }
}
