//! A-series of the toric degeneration `P(k,n)` and the factorial modification.
//!
//! The coefficient of `q^m q̃^s` is `(1/(m!)^n) ∏ C(s_{i+1,j}, s_{i,j}) C(s_{i,j+1}, s_{i,j})`
//! over the `(k-1) × (n-k-1)` grid, with `s_{i,j} = m` off the grid.
//! Specializing `q̃ = 1` sums over all grids; that sum is evaluated column by
//! column so the cost is polynomial in `m` with exponent `k`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::arith::{factorial, factorials, BinomialTable, MultiSeries, PowerSeries};

/// Default cap on the truncation order of a specialized A-series.
pub const DEFAULT_MAX_TRUNC: usize = 200;
/// Default cap on the number of grid points enumerated with parameters kept.
pub const DEFAULT_MAX_GRID_POINTS: u64 = 5_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypergeomError {
    #[error("invalid Grassmannian shape k = {k}, n = {n}")]
    InvalidShape { k: usize, n: usize },
    #[error("truncation {requested} exceeds the limit {limit}")]
    TruncationLimit { requested: usize, limit: usize },
    #[error("parameter-tracking expansion needs {points} grid points, limit is {limit}")]
    GridLimit { points: u64, limit: u64 },
}

pub type Result<T, E = HypergeomError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ASeriesSpec {
    pub k: usize,
    pub n: usize,
    pub trunc: usize,
    pub keep_params: bool,
    pub max_trunc: usize,
    pub max_grid_points: u64,
}

impl ASeriesSpec {
    pub fn new(k: usize, n: usize, trunc: usize) -> Self {
        ASeriesSpec {
            k,
            n,
            trunc,
            keep_params: false,
            max_trunc: DEFAULT_MAX_TRUNC,
            max_grid_points: DEFAULT_MAX_GRID_POINTS,
        }
    }

    pub fn keep_params(mut self, keep: bool) -> Self {
        self.keep_params = keep;
        self
    }

    pub fn max_trunc(mut self, limit: usize) -> Self {
        self.max_trunc = limit;
        self
    }

    /// Grid shape `(k-1, n-k-1)`.
    pub fn grid(&self) -> (usize, usize) {
        (self.k - 1, self.n - self.k - 1)
    }

    fn validate(&self) -> Result<()> {
        if self.k == 0 || self.k >= self.n {
            return Err(HypergeomError::InvalidShape { k: self.k, n: self.n });
        }
        if self.trunc > self.max_trunc {
            return Err(HypergeomError::TruncationLimit {
                requested: self.trunc,
                limit: self.max_trunc,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ASeries {
    Specialized(PowerSeries),
    /// Auxiliary variable `(i-1)(n-k-1) + (j-1)` carries the grid entry `s_{i,j}`.
    Full(MultiSeries),
}

pub fn a_series(spec: &ASeriesSpec) -> Result<ASeries> {
    spec.validate()?;
    if spec.keep_params {
        a_series_params(spec).map(ASeries::Full)
    } else {
        a_series_specialized(spec).map(ASeries::Specialized)
    }
}

/// `A_{P(k,n)}(q, 1)` in the variable `q`.
pub fn a_series_specialized(spec: &ASeriesSpec) -> Result<PowerSeries> {
    spec.validate()?;
    let binom = BinomialTable::new(spec.trunc);
    let facts = factorials(spec.trunc);
    let sums = parallel_map(spec.trunc + 1, |m| grid_sum(spec.k, spec.n, m, &binom));
    Ok(PowerSeries::from_fn("q", spec.trunc, |m| {
        BigRational::new(sums[m].clone(), num_traits::pow(facts[m].clone(), spec.n))
    }))
}

/// Full expansion in `q` and the grid parameters by direct enumeration.
pub fn a_series_params(spec: &ASeriesSpec) -> Result<MultiSeries> {
    spec.validate()?;
    let (rows, cols) = spec.grid();
    let cells = rows * cols;
    let points: u64 = (0..=spec.trunc as u64)
        .map(|m| (m + 1).saturating_pow(cells as u32))
        .fold(0u64, u64::saturating_add);
    if points > spec.max_grid_points {
        return Err(HypergeomError::GridLimit {
            points,
            limit: spec.max_grid_points,
        });
    }
    let binom = BinomialTable::new(spec.trunc);
    let mut out = MultiSeries::new(cells, spec.trunc);
    for m in 0..=spec.trunc {
        let denom = num_traits::pow(factorial(m as u64), spec.n);
        let mut s = vec![0usize; cells];
        loop {
            let w = grid_weight(&s, rows, cols, m, &binom);
            if !w.is_zero() {
                let aux = s.iter().map(|&x| x as u32).collect();
                out.add_term(m, aux, BigRational::new(w, denom.clone()));
            }
            if !odometer(&mut s, m) {
                break;
            }
        }
    }
    Ok(out)
}

/// Advances `s` through `[0, m]^len` lexicographically; false after the last.
fn odometer(s: &mut [usize], m: usize) -> bool {
    for x in s.iter_mut().rev() {
        if *x < m {
            *x += 1;
            return true;
        }
        *x = 0;
    }
    false
}

/// Product of binomials for one grid, `s` stored row-major.
fn grid_weight(s: &[usize], rows: usize, cols: usize, m: usize, binom: &BinomialTable) -> BigInt {
    let at = |i: usize, j: usize| if i >= rows || j >= cols { m } else { s[i * cols + j] };
    let mut w = BigInt::one();
    for i in 0..rows {
        for j in 0..cols {
            let c = at(i, j);
            w *= binom.get(at(i + 1, j), c) * binom.get(at(i, j + 1), c);
            if w.is_zero() {
                return w;
            }
        }
    }
    w
}

/// `Σ_s ∏ C(s_{i+1,j}, s_{i,j}) C(s_{i,j+1}, s_{i,j})` over all grids with
/// entries in `[0, m]`.
///
/// The state is one grid column, indexed in base `m + 1`. Starting from the
/// all-`m` column to the right of the grid, each step applies the horizontal
/// binomials one row at a time, then the vertical binomials inside the new
/// column.
fn grid_sum(k: usize, n: usize, m: usize, binom: &BinomialTable) -> BigInt {
    let (rows, cols) = (k - 1, n - k - 1);
    if rows == 0 || cols == 0 {
        return BigInt::one();
    }
    let base = m + 1;
    let nstates = base.pow(rows as u32);
    let mut f = vec![BigInt::zero(); nstates];
    f[nstates - 1] = BigInt::one();
    let mut digits = vec![0usize; rows];
    for _ in 0..cols {
        let mut stride = 1;
        for _ in 0..rows {
            let mut g = vec![BigInt::zero(); nstates];
            for (idx, v) in f.iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                let t = (idx / stride) % base;
                let rest = idx - t * stride;
                for s in 0..=t {
                    g[rest + s * stride] += binom.get(t, s) * v;
                }
            }
            f = g;
            stride *= base;
        }
        for (idx, v) in f.iter_mut().enumerate() {
            if v.is_zero() {
                continue;
            }
            let mut x = idx;
            for d in digits.iter_mut() {
                *d = x % base;
                x /= base;
            }
            for i in 0..rows {
                let below = if i + 1 < rows { digits[i + 1] } else { m };
                *v *= binom.get(below, digits[i]);
                if v.is_zero() {
                    break;
                }
            }
        }
    }
    f.into_iter().sum()
}

/// Evaluates `f(0..len)` on scoped worker threads; results stay in index order.
fn parallel_map<T: Send, F: Fn(usize) -> T + Sync>(len: usize, f: F) -> Vec<T> {
    let workers = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
        .min(len.max(1));
    let mut slots: Vec<Option<T>> = (0..len).map(|_| None).collect();
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let f = &f;
                scope.spawn(move || (w..len).step_by(workers).map(|i| (i, f(i))).collect::<Vec<_>>())
            })
            .collect();
        for h in handles {
            for (i, v) in h.join().expect("worker panicked") {
                slots[i] = Some(v);
            }
        }
    });
    slots.into_iter().map(|s| s.expect("every index computed")).collect()
}

/// Degrees `l_1..l_r` of a split bundle.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FactorialBundle {
    pub degrees: Vec<u32>,
}

impl FactorialBundle {
    pub fn new(degrees: Vec<u32>) -> Self {
        FactorialBundle { degrees }
    }

    pub fn total(&self) -> u32 {
        self.degrees.iter().sum()
    }

    /// `∏ (l_i m)!`.
    pub fn weight(&self, m: usize) -> BigInt {
        self.degrees
            .iter()
            .map(|&l| factorial(u64::from(l) * m as u64))
            .product()
    }
}

/// Multiplies the `m`-th coefficient by `∏ (l_i m)!`.
pub fn factorial_trick(a: &PowerSeries, bundle: &FactorialBundle) -> PowerSeries {
    PowerSeries::from_fn(a.var(), a.trunc(), |m| {
        &a.coeffs()[m] * BigRational::from_integer(bundle.weight(m))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{binomial, int, rat};

    fn spec(k: usize, n: usize, t: usize) -> ASeriesSpec {
        ASeriesSpec::new(k, n, t)
    }

    #[test]
    fn g24_first_coefficients() {
        let a = a_series_specialized(&spec(2, 4, 3)).unwrap();
        assert_eq!(a.coeffs(), &[int(1), int(2), rat(3, 8), rat(5, 324)]);
    }

    #[test]
    fn projective_space_has_empty_grid() {
        let a = a_series_specialized(&spec(1, 4, 5)).unwrap();
        for m in 0..=5u64 {
            assert_eq!(a.coeffs()[m as usize], BigRational::new(1.into(), num_traits::pow(factorial(m), 4)));
        }
    }

    #[test]
    fn g25_matches_two_index_sum() {
        let a = a_series_specialized(&spec(2, 5, 8)).unwrap();
        for m in 0..=8u64 {
            let mut t = BigInt::zero();
            for r in 0..=m {
                for s in 0..=m {
                    t += binomial(m, r) * binomial(s, r) * num_traits::pow(binomial(m, s), 2);
                }
            }
            let expected = BigRational::new(t, num_traits::pow(factorial(m), 5));
            assert_eq!(a.coeffs()[m as usize], expected);
        }
    }

    #[test]
    fn column_transfer_matches_enumeration() {
        for (k, n, t) in [(2, 4, 6), (2, 6, 5), (3, 6, 4), (3, 7, 3), (4, 8, 2)] {
            let s = spec(k, n, t);
            let dp = a_series_specialized(&s).unwrap();
            let brute = a_series_params(&s).unwrap().specialize_ones("q");
            assert_eq!(dp, brute, "G({k},{n})");
        }
    }

    #[test]
    fn g36_parameter_monomials() {
        // Grid [[r, s], [t, u]]: weight C(t,r)C(s,r)C(u,s)C(m,s)C(u,t)C(m,t)C(m,u)^2.
        let full = a_series_params(&spec(3, 6, 2)).unwrap();
        let (m, r, s, t, u) = (2u64, 0u64, 1u64, 1u64, 2u64);
        let w = binomial(t, r) * binomial(s, r) * binomial(u, s) * binomial(m, s)
            * binomial(u, t) * binomial(m, t) * num_traits::pow(binomial(m, u), 2);
        let expected = BigRational::new(w, num_traits::pow(factorial(m), 6));
        assert_eq!(full.coeff(2, &[0, 1, 1, 2]), expected);
    }

    #[test]
    fn factorial_trick_on_quartic() {
        let a = a_series_specialized(&spec(2, 4, 6)).unwrap();
        let b = factorial_trick(&a, &FactorialBundle::new(vec![4]));
        for m in 0..=6u64 {
            let expected = BigRational::new(factorial(4 * m) * factorial(2 * m), num_traits::pow(factorial(m), 6));
            assert_eq!(b.coeffs()[m as usize], expected);
        }
        assert_eq!(factorial_trick(&a, &FactorialBundle::default()), a);
    }

    #[test]
    fn limits_are_enforced() {
        assert!(matches!(
            a_series(&spec(2, 4, 300)),
            Err(HypergeomError::TruncationLimit { .. })
        ));
        assert!(matches!(
            a_series(&spec(3, 8, 30).keep_params(true)),
            Err(HypergeomError::GridLimit { .. })
        ));
        assert!(matches!(a_series(&spec(4, 4, 3)), Err(HypergeomError::InvalidShape { .. })));
    }
}
