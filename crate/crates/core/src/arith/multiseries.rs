use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;

use super::PowerSeries;

/// Series in a principal variable `q` and `nparams` auxiliary variables,
/// truncated in the principal degree only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiSeries {
    nparams: usize,
    trunc: usize,
    terms: BTreeMap<(usize, Vec<u32>), BigRational>,
}

impl MultiSeries {
    pub fn new(nparams: usize, trunc: usize) -> Self {
        MultiSeries {
            nparams,
            trunc,
            terms: BTreeMap::new(),
        }
    }

    /// Adds `c q^m q̃^aux`; terms with `m > trunc` are dropped.
    pub fn add_term(&mut self, m: usize, aux: Vec<u32>, c: BigRational) {
        assert_eq!(aux.len(), self.nparams, "auxiliary exponent arity");
        if m > self.trunc || c.is_zero() {
            return;
        }
        let slot = self.terms.entry((m, aux)).or_insert_with(BigRational::zero);
        *slot += c;
    }

    pub fn nparams(&self) -> usize {
        self.nparams
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn coeff(&self, m: usize, aux: &[u32]) -> BigRational {
        self.terms
            .get(&(m, aux.to_vec()))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, Vec<u32>), &BigRational)> {
        self.terms.iter().filter(|(_, c)| !c.is_zero())
    }

    /// Sets every auxiliary variable to one.
    pub fn specialize_ones(&self, var: &str) -> PowerSeries {
        let mut coeffs = vec![BigRational::zero(); self.trunc + 1];
        for ((m, _), c) in &self.terms {
            coeffs[*m] += c;
        }
        PowerSeries::new(var, coeffs).expect("trunc + 1 > 0 coefficients")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    #[test]
    fn specialization_sums_fibres() {
        let mut s = MultiSeries::new(2, 2);
        s.add_term(0, vec![0, 0], int(1));
        s.add_term(1, vec![1, 0], int(2));
        s.add_term(1, vec![0, 1], int(3));
        s.add_term(3, vec![0, 0], int(9));
        let p = s.specialize_ones("q");
        assert_eq!(p.coeffs(), &[int(1), int(5), int(0)]);
        assert_eq!(s.coeff(1, &[0, 1]), int(3));
    }
}
