//! Strategies and checks shared by the property suite and the acceptance
//! runner. Every oracle here is computed independently of the routine under
//! test.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use grassmirror::arith::{laurent_pow_ct, rat, LaurentPoly, PowerSeries};
use grassmirror::dop::{pf_fit, DOp, FitBounds};
use grassmirror::laurent_mirror::period_ct;
use grassmirror::mirror::extract_instantons;

pub type Check = Result<(), TestCaseError>;

pub fn small_rational() -> impl Strategy<Value = BigRational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

/// Series with the given constant term and random higher coefficients.
pub fn series_with(constant: BigRational) -> impl Strategy<Value = PowerSeries> {
    (1usize..=7).prop_flat_map(move |trunc| {
        let c0 = constant.clone();
        proptest::collection::vec(small_rational(), trunc).prop_map(move |rest| {
            let mut coeffs = vec![c0.clone()];
            coeffs.extend(rest);
            PowerSeries::new("z", coeffs).unwrap()
        })
    })
}

/// Series `lead·z + ...` with an invertible linear term.
pub fn reversible_series() -> impl Strategy<Value = PowerSeries> {
    (series_with(BigRational::zero()), 1i64..=5).prop_map(|(f, lead)| {
        let mut coeffs = f.coeffs().to_vec();
        coeffs[1] = rat(lead, 1);
        PowerSeries::new("z", coeffs).unwrap()
    })
}

pub fn laurent(nvars: usize) -> impl Strategy<Value = LaurentPoly> {
    proptest::collection::vec((proptest::collection::vec(-2i64..=2, nvars), -3i64..=3), 1..=4).prop_map(move |terms| {
        let mut p = LaurentPoly::zero(nvars);
        for (e, c) in terms {
            p.add_term(e, rat(c, 1)).unwrap();
        }
        p
    })
}

/// Positive grading on two torus variables plus the weight of the tracked
/// parameter, with a polynomial whose monomials all have weight at least one.
pub fn graded_laurent() -> impl Strategy<Value = (LaurentPoly, Vec<i64>)> {
    let raw = proptest::collection::vec((proptest::collection::vec(-2i64..=2, 2), 0i64..=2, -2i64..=2), 1..=5);
    (proptest::collection::vec(1i64..=2, 2), 1i64..=3, raw).prop_map(|(grading, qweight, raw)| {
        let mut g = LaurentPoly::zero(3);
        for (x, q, c) in raw {
            let w: i64 = x.iter().zip(&grading).map(|(a, b)| a * b).sum::<i64>() + q * qweight;
            if w >= 1 {
                let mut e = x;
                e.push(q);
                g.add_term(e, rat(c, 1)).unwrap();
            }
        }
        let mut full = grading;
        full.push(qweight);
        (g, full)
    })
}

pub fn alpha() -> impl Strategy<Value = BigRational> {
    (2i64..=6).prop_flat_map(|d| (1..d).prop_map(move |n| rat(n, d)))
}

/// Constant term of `l^m` in the untracked variables, by summing over every
/// ordered `m`-tuple of terms; keyed by the exponents of the last `tracked`
/// variables.
pub fn brute_ct(l: &LaurentPoly, m: u32, tracked: usize) -> BTreeMap<Vec<i64>, BigRational> {
    let terms: Vec<(Vec<i64>, BigRational)> = l.terms().map(|(e, c)| (e.to_vec(), c.clone())).collect();
    let n = l.nvars();
    let mut out = BTreeMap::new();
    if terms.is_empty() && m > 0 {
        return out;
    }
    let mut idx = vec![0usize; m as usize];
    loop {
        let mut exp = vec![0i64; n];
        let mut c = BigRational::one();
        for &i in &idx {
            for (a, b) in exp.iter_mut().zip(&terms[i].0) {
                *a += b;
            }
            c *= &terms[i].1;
        }
        if exp[..n - tracked].iter().all(|&x| x == 0) {
            *out.entry(exp[n - tracked..].to_vec()).or_insert_with(BigRational::zero) += c;
        }
        let mut pos = 0;
        while pos < idx.len() {
            idx[pos] += 1;
            if idx[pos] < terms.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
        if pos == idx.len() {
            break;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Rising products `c^m ∏_i (α_i)_m / (m!)^r`, annihilated by
/// `D^r - c z ∏_i (D + α_i)`.
pub fn hypergeometric(c: i64, alphas: &[BigRational], trunc: usize) -> PowerSeries {
    let r = alphas.len() as i32;
    let mut a = BigRational::one();
    PowerSeries::from_fn("z", trunc, |m| {
        if m > 0 {
            let m1 = BigRational::from_integer(BigInt::from(m - 1));
            for alpha in alphas {
                a *= &m1 + alpha;
            }
            a *= rat(c, 1) / rat(m as i64, 1).pow(r);
        }
        a.clone()
    })
}

pub fn hypergeometric_operator(c: i64, alphas: &[BigRational]) -> DOp {
    let mut op = DOp::zero("z");
    op.add_term(0, alphas.len(), BigRational::one());
    // ∏ (D + α_i) expanded in powers of D.
    let mut poly = vec![BigRational::one()];
    for alpha in alphas {
        let mut next = vec![BigRational::zero(); poly.len() + 1];
        for (j, p) in poly.iter().enumerate() {
            next[j] += p * alpha;
            next[j + 1] += p;
        }
        poly = next;
    }
    for (j, p) in poly.iter().enumerate() {
        op.add_term(1, j, -p * rat(c, 1));
    }
    op
}

/// `n0 + Σ n_d d³ q^d/(1 - q^d)` expanded to `q^{ns.len()}`.
pub fn lambert(n0: i64, ns: &[i64]) -> PowerSeries {
    let trunc = ns.len();
    let mut coeffs = vec![BigRational::zero(); trunc + 1];
    coeffs[0] = rat(n0, 1);
    for (i, &n) in ns.iter().enumerate() {
        let d = i + 1;
        let weight = n * (d as i64).pow(3);
        for multiple in (d..=trunc).step_by(d) {
            coeffs[multiple] += rat(weight, 1);
        }
    }
    PowerSeries::new("q", coeffs).unwrap()
}

pub fn check_exp_log(f: &PowerSeries) -> Check {
    prop_assert_eq!(&f.log().unwrap().exp().unwrap(), f);
    Ok(())
}

pub fn check_log_exp(f: &PowerSeries) -> Check {
    prop_assert_eq!(&f.exp().unwrap().log().unwrap(), f);
    Ok(())
}

pub fn check_reversion(f: &PowerSeries) -> Check {
    let g = f.revert().unwrap();
    let id = PowerSeries::variable("z", f.trunc());
    prop_assert_eq!(&f.compose(&g).unwrap(), &id);
    prop_assert_eq!(&g.compose(f).unwrap(), &id);
    Ok(())
}

pub fn check_inverse(f: &PowerSeries) -> Check {
    let one = f.mul(&f.inverse().unwrap()).unwrap();
    prop_assert_eq!(one, PowerSeries::one("z", f.trunc()));
    Ok(())
}

pub fn check_laurent_ct(l: &LaurentPoly, m: u32) -> Check {
    let expected = brute_ct(l, m, 0).remove(&Vec::new()).unwrap_or_else(BigRational::zero);
    prop_assert_eq!(laurent_pow_ct(l, m), expected);
    Ok(())
}

pub fn check_period(g: &LaurentPoly, grading: &[i64], order: usize) -> Check {
    if g.is_empty() {
        return Ok(());
    }
    let got = period_ct(g, grading, order, "q").unwrap();
    // A constant term of q-degree d has weight d·w_q, which bounds m.
    let qweight = *grading.last().unwrap() as u32;
    let mut expected = vec![BigRational::zero(); order + 1];
    for m in 0..=qweight * order as u32 {
        for (e, c) in brute_ct(g, m, 1) {
            if (e[0] as usize) <= order {
                expected[e[0] as usize] += c;
            }
        }
    }
    prop_assert_eq!(got.coeffs(), &expected[..]);
    Ok(())
}

/// The fitted operator annihilates the series (certificate) and equals the
/// known hypergeometric operator in canonical form.
pub fn check_pf_fit(c: i64, alphas: &[BigRational]) -> Check {
    let bounds = FitBounds {
        max_order: 3,
        max_zdeg: 1,
        guard: 6,
    };
    let f = hypergeometric(c, alphas, (bounds.max_order + 1) * (bounds.max_zdeg + 1) + bounds.guard);
    let op = pf_fit(&f, bounds).unwrap();
    prop_assert!(op.apply(&f).unwrap().is_zero());
    prop_assert_eq!(&op, &hypergeometric_operator(c, alphas).canonical());
    Ok(())
}

pub fn check_pf_fit_scaling(c: i64, alphas: &[BigRational], s: &BigRational) -> Check {
    if s.is_zero() {
        return Ok(());
    }
    let bounds = FitBounds {
        max_order: 2,
        max_zdeg: 1,
        guard: 6,
    };
    let f = hypergeometric(c, alphas, (bounds.max_order + 1) * (bounds.max_zdeg + 1) + bounds.guard);
    prop_assert_eq!(pf_fit(&f, bounds).unwrap(), pf_fit(&f.scale(s), bounds).unwrap());
    Ok(())
}

pub fn check_canonical(terms: &[(usize, usize, BigRational)], s: &BigRational) -> Check {
    let mut op = DOp::zero("z");
    for (i, j, c) in terms {
        op.add_term(*i, *j, c.clone());
    }
    if op.is_zero() || s.is_zero() {
        return Ok(());
    }
    let canon = op.canonical();
    prop_assert_eq!(&canon.canonical(), &canon);
    prop_assert_eq!(&op.scale(s).canonical(), &canon);
    prop_assert!(canon.terms().all(|(_, c)| c.is_integer()));
    Ok(())
}

pub fn check_instanton_round_trip(n0: i64, ns: &[i64]) -> Check {
    let got = extract_instantons(&lambert(n0, ns), ns.len()).unwrap();
    let expected: Vec<BigInt> = ns.iter().map(|&n| BigInt::from(n)).collect();
    prop_assert_eq!(got, expected);
    Ok(())
}

/// `q²` coefficient `n_1 + 8 n_2` with `n_1 = 0` forces `n_2 = bump/8`.
pub fn check_non_integral_rejected(n0: i64, bump: i64) -> Check {
    let kq = PowerSeries::new("q", vec![rat(n0, 1), BigRational::zero(), rat(bump, 1)]).unwrap();
    prop_assert!(extract_instantons(&kq, 2).is_err());
    Ok(())
}
