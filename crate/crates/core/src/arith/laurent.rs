use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{ArithError, Result};

/// Exponent vector of a Laurent monomial.
pub type Exponent = Vec<i64>;

/// Finitely supported map from exponent vectors in `Z^nvars` to rationals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "LaurentWire", into = "LaurentWire")]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Exponent, BigRational>,
}

#[derive(Serialize, Deserialize)]
struct TermWire {
    exp: Vec<i64>,
    #[serde(with = "crate::arith::serde_rational")]
    c: BigRational,
}

#[derive(Serialize, Deserialize)]
struct LaurentWire {
    nvars: usize,
    terms: Vec<TermWire>,
}

impl TryFrom<LaurentWire> for LaurentPoly {
    type Error = String;

    fn try_from(w: LaurentWire) -> std::result::Result<Self, String> {
        let mut p = LaurentPoly::zero(w.nvars);
        for t in w.terms {
            p.add_term(t.exp, t.c).map_err(|e| e.to_string())?;
        }
        Ok(p)
    }
}

impl From<LaurentPoly> for LaurentWire {
    fn from(p: LaurentPoly) -> Self {
        LaurentWire {
            nvars: p.nvars,
            terms: p.terms.into_iter().map(|(exp, c)| TermWire { exp, c }).collect(),
        }
    }
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(vec![0; nvars], BigRational::one())
    }

    pub fn monomial(exp: Exponent, c: BigRational) -> Self {
        let mut p = Self::zero(exp.len());
        p.add_term(exp, c).expect("arity matches by construction");
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponent, BigRational)>) -> Result<Self> {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            p.add_term(e, c)?;
        }
        Ok(p)
    }

    /// Adds `c X^exp`, removing the entry if it cancels.
    pub fn add_term(&mut self, exp: Exponent, c: BigRational) -> Result<()> {
        if exp.len() != self.nvars {
            return Err(ArithError::ArityMismatch {
                left: self.nvars,
                right: exp.len(),
            });
        }
        if c.is_zero() {
            return Ok(());
        }
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
        Ok(())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &[i64]) -> BigRational {
        self.terms.get(exp).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Coefficient of the zero exponent vector.
    pub fn constant_term(&self) -> BigRational {
        self.coeff(&vec![0; self.nvars])
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * c).expect("same arity");
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.nvars != other.nvars {
            return Err(ArithError::ArityMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        let mut acc: BTreeMap<Exponent, BigRational> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponent = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                *acc.entry(e).or_insert_with(BigRational::zero) += ca * cb;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Ok(LaurentPoly {
            nvars: self.nvars,
            terms: acc,
        })
    }

    pub fn pow(&self, m: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..m {
            acc = acc.mul(self).expect("same arity");
        }
        acc
    }

    /// Coordinatewise minimum and maximum exponent over the support.
    pub fn exponent_box(&self) -> Vec<(i64, i64)> {
        let mut bounds = vec![(i64::MAX, i64::MIN); self.nvars];
        for e in self.terms.keys() {
            for (b, &x) in bounds.iter_mut().zip(e) {
                b.0 = b.0.min(x);
                b.1 = b.1.max(x);
            }
        }
        if self.terms.is_empty() {
            bounds.iter_mut().for_each(|b| *b = (0, 0));
        }
        bounds
    }

    /// Renames/permutes coordinates: output coordinate `i` takes input
    /// coordinate `map[i]`.
    pub fn permute(&self, map: &[usize]) -> Self {
        let mut out = Self::zero(map.len());
        for (e, c) in &self.terms {
            let ne: Exponent = map.iter().map(|&i| e[i]).collect();
            out.add_term(ne, c.clone()).expect("arity");
        }
        out
    }

    /// Set of exponent vectors in the support.
    pub fn support(&self) -> Vec<Exponent> {
        self.terms.keys().cloned().collect()
    }
}

/// Constant term of `L^m`.
///
/// Powers are accumulated by convolution while discarding partial products
/// whose exponent can no longer return to the origin: after `t` of `m`
/// factors, coordinate `c` of a surviving exponent `e` must satisfy
/// `-(m-t)·max_c <= e_c <= -(m-t)·min_c`.
pub fn laurent_pow_ct(l: &LaurentPoly, m: u32) -> BigRational {
    if m == 0 {
        return BigRational::one();
    }
    let bounds = l.exponent_box();
    let mut acc: BTreeMap<Exponent, BigRational> = BTreeMap::new();
    acc.insert(vec![0; l.nvars], BigRational::one());
    for step in 1..=m {
        let remaining = i64::from(m - step);
        let mut next: BTreeMap<Exponent, BigRational> = BTreeMap::new();
        for (ea, ca) in &acc {
            for (eb, cb) in &l.terms {
                let e: Exponent = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let reachable = e
                    .iter()
                    .zip(&bounds)
                    .all(|(&x, &(lo, hi))| -remaining * hi <= x && x <= -remaining * lo);
                if reachable {
                    *next.entry(e).or_insert_with(BigRational::zero) += ca * cb;
                }
            }
        }
        next.retain(|_, v| !v.is_zero());
        acc = next;
        if acc.is_empty() {
            return BigRational::zero();
        }
    }
    acc.remove(&vec![0; l.nvars]).unwrap_or_else(BigRational::zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    #[test]
    fn ct_of_zeroth_power() {
        let l = LaurentPoly::from_terms(1, [(vec![1], int(1))]).unwrap();
        assert_eq!(laurent_pow_ct(&l, 0), int(1));
    }

    #[test]
    fn p1_lax_square() {
        // L = x + q/x at q = 5: CT(L^2) = 2q
        let l = LaurentPoly::from_terms(1, [(vec![1], int(1)), (vec![-1], int(5))]).unwrap();
        assert_eq!(laurent_pow_ct(&l, 2), int(10));
        assert_eq!(laurent_pow_ct(&l, 3), int(0));
        assert_eq!(laurent_pow_ct(&l, 4), int(6 * 25));
    }

    #[test]
    fn cancellation_removes_terms() {
        let mut p = LaurentPoly::from_terms(2, [(vec![1, 0], int(2))]).unwrap();
        p.add_term(vec![1, 0], int(-2)).unwrap();
        assert!(p.is_empty());
        assert!(p.add_term(vec![1], int(1)).is_err());
    }

    #[test]
    fn json_shape() {
        let p = LaurentPoly::from_terms(2, [(vec![1, -1], crate::arith::rat(1, 2))]).unwrap();
        let v = serde_json::to_value(&p).unwrap();
        assert_eq!(v, serde_json::json!({"nvars": 2, "terms": [{"exp": [1, -1], "c": "1/2"}]}));
        assert_eq!(serde_json::from_value::<LaurentPoly>(v).unwrap(), p);
    }
}
