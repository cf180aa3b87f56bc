use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{DOp, DOpError, Result};
use crate::arith::{linalg, PowerSeries};

/// Search bounds for [`pf_fit`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FitBounds {
    pub max_order: usize,
    pub max_zdeg: usize,
    /// Equations beyond the unknown count, kept as a certificate.
    pub guard: usize,
}

impl FitBounds {
    pub fn new(max_order: usize, max_zdeg: usize) -> Self {
        FitBounds {
            max_order,
            max_zdeg,
            guard: 10,
        }
    }
}

/// Finds the annihilating operator of smallest `order + zdeg` (then smallest
/// order) for the series `f`.
///
/// For each shape `(r, d)` the unknowns `c_{i,j}` (`i <= d`, `j <= r`) must
/// satisfy `Σ c_{i,j} (m-i)^j f_{m-i} = 0` for every `m` up to the
/// truncation. The series must carry at least `guard` more coefficients than
/// the largest shape has unknowns.
pub fn pf_fit(f: &PowerSeries, bounds: FitBounds) -> Result<DOp> {
    if f.is_zero() {
        return Err(DOpError::ZeroSeries);
    }
    let have = f.trunc() + 1;
    let need = (bounds.max_order + 1) * (bounds.max_zdeg + 1) + bounds.guard;
    if f.trunc() < need {
        return Err(DOpError::InsufficientTerms {
            order: bounds.max_order,
            zdeg: bounds.max_zdeg,
            need,
            have: f.trunc(),
        });
    }
    let mut shapes: Vec<(usize, usize)> = (0..=bounds.max_order)
        .flat_map(|r| (0..=bounds.max_zdeg).map(move |d| (r, d)))
        .collect();
    shapes.sort_by_key(|&(r, d)| (r + d, r));
    for (r, d) in shapes {
        let unknowns = (r + 1) * (d + 1);
        let rows: Vec<Vec<BigRational>> = (0..have)
            .map(|m| {
                let mut row = vec![BigRational::zero(); unknowns];
                for i in 0..=d.min(m) {
                    let b = &f.coeffs()[m - i];
                    if b.is_zero() {
                        continue;
                    }
                    let x = BigInt::from(m - i);
                    let mut p = BigInt::from(1);
                    for j in 0..=r {
                        row[i * (r + 1) + j] = b * &p;
                        p *= &x;
                    }
                }
                row
            })
            .collect();
        let kernel = linalg::nullspace(&rows, unknowns);
        match kernel.len() {
            0 => continue,
            1 => {
                let v = &kernel[0];
                let op = DOp::from_terms(
                    f.var(),
                    (0..=d).flat_map(|i| (0..=r).map(move |j| ((i, j), v[i * (r + 1) + j].clone()))),
                );
                return Ok(op.canonical());
            }
            dim => return Err(DOpError::Ambiguous { order: r, zdeg: d, dim }),
        }
    }
    Err(DOpError::NotFound {
        max_order: bounds.max_order,
        max_zdeg: bounds.max_zdeg,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::factorial;

    #[test]
    fn recovers_geometric_annihilator() {
        let geo = PowerSeries::from_ints("z", &[1; 20]).unwrap();
        let op = pf_fit(&geo, FitBounds::new(2, 2)).unwrap();
        assert_eq!(op, DOp::parse("D - zD - z").unwrap());
    }

    #[test]
    fn recovers_quartic_operator() {
        let f = PowerSeries::from_fn("z", 40, |m| {
            let m = m as u64;
            BigRational::new(factorial(4 * m) * factorial(2 * m), num_traits::pow(factorial(m), 6))
        });
        let op = pf_fit(&f, FitBounds::new(4, 3)).unwrap();
        assert_eq!(op, DOp::parse("D^4 - 16z(2D+1)^2(4D+1)(4D+3)").unwrap());
    }

    #[test]
    fn short_series_is_rejected() {
        let f = PowerSeries::from_ints("z", &[1, 2, 3]).unwrap();
        assert!(matches!(
            pf_fit(&f, FitBounds::new(1, 1)),
            Err(DOpError::InsufficientTerms { .. })
        ));
        assert!(matches!(
            pf_fit(&PowerSeries::zero("z", 30), FitBounds::new(1, 1)),
            Err(DOpError::ZeroSeries)
        ));
    }

    #[test]
    fn no_operator_within_bounds() {
        // exp(exp(z) - 1) needs more than order one with z-degree one.
        let f = PowerSeries::variable("z", 25)
            .exp()
            .unwrap()
            .sub(&PowerSeries::one("z", 25))
            .unwrap()
            .exp()
            .unwrap();
        assert!(matches!(
            pf_fit(&f, FitBounds::new(1, 1)),
            Err(DOpError::NotFound { .. })
        ));
    }
}
