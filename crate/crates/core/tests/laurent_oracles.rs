//! Constant-term periods of the Laurent mirrors against the A-series side.

use grassmirror::arith::{factorial, int, LaurentPoly, PowerSeries};
use grassmirror::hypergeom::{a_series_specialized, factorial_trick, ASeriesSpec, FactorialBundle};
use grassmirror::laurent_mirror::*;
use grassmirror::registry::default_registry;
use num_bigint::BigInt;
use num_rational::BigRational;

fn modified_a_series(k: usize, n: usize, degrees: &[u32], order: usize) -> PowerSeries {
    let a = a_series_specialized(&ASeriesSpec::new(k, n, order)).unwrap();
    factorial_trick(&a, &FactorialBundle::new(degrees.to_vec()))
}

#[test]
fn lax_powers_match_a_series() {
    let lax = lax_operator(2, 4).unwrap();
    let a = a_series_specialized(&ASeriesSpec::new(2, 4, 2)).unwrap();
    for d in 1..=2u32 {
        let ct = power_constant_terms(&lax.poly, 4 * d, 1);
        let expected = BigRational::from_integer(factorial(4 * d as u64)) * &a.coeffs()[d as usize];
        assert_eq!(ct.get(&vec![d as i64]).cloned().unwrap(), expected);
        assert_eq!(ct.len(), 1);
    }
}

#[test]
fn system_periods_match_modified_a_series() {
    for case in default_registry() {
        let order = 3;
        let coeffs = MirrorCoeffs::canonical(case.k, case.n).unwrap();
        let sys = mirror_system(case.k, case.n, &case.degrees, &default_partition(&case.degrees), &coeffs).unwrap();
        let period = sys.period(order).unwrap();
        assert_eq!(period, modified_a_series(case.k, case.n, &case.degrees, order), "{}", case.name);
    }
}

fn x113_partition() -> Vec<Vec<usize>> {
    vec![vec![1], vec![5], vec![2, 3, 4]]
}

#[test]
fn x113_period_is_partition_independent() {
    let coeffs = MirrorCoeffs::canonical(2, 5).unwrap();
    let a = mirror_system(2, 5, &[1, 1, 3], &x113_partition(), &coeffs).unwrap();
    let b = mirror_system(2, 5, &[1, 1, 3], &default_partition(&[1, 1, 3]), &coeffs).unwrap();
    assert_eq!(a.period(3).unwrap(), b.period(3).unwrap());
}

/// `Σ_{k+l+n=m} (3m)! / ((k!)^2 (n!)^2 l! (k+l)! (l+n)!)`
fn x113_coefficient(m: u64) -> BigRational {
    let mut acc = BigRational::from_integer(BigInt::from(0));
    for k in 0..=m {
        for l in 0..=(m - k) {
            let n = m - k - l;
            let den = factorial(k).pow(2) * factorial(n).pow(2) * factorial(l) * factorial(k + l) * factorial(l + n);
            acc += BigRational::new(factorial(3 * m), den);
        }
    }
    acc
}

#[test]
fn x113_reduced_mirror_matches_hypersurface() {
    let coeffs = MirrorCoeffs::canonical(2, 5).unwrap();
    let sys = mirror_system(2, 5, &[1, 1, 3], &x113_partition(), &coeffs).unwrap();
    let reduced = sys.reduce().unwrap();
    assert_eq!(reduced.variables.len(), 4);
    assert_eq!(reduced.equations.len(), 1);
    let g = &reduced.equations[0];
    assert_eq!(g.len(), 7);

    // X1 + X2 + z (X1X2)^-1 + X3 + z X4 + (X3X4)^-1 + X1X2X3X4
    let f0: Vec<(Vec<i64>, i64)> = vec![
        (vec![1, 0, 0, 0], 0),
        (vec![0, 1, 0, 0], 0),
        (vec![-1, -1, 0, 0], 1),
        (vec![0, 0, 1, 0], 0),
        (vec![0, 0, 0, 1], 1),
        (vec![0, 0, -1, -1], 0),
        (vec![1, 1, 1, 1], 0),
    ];
    let ours: Vec<(Vec<i64>, i64)> = g.terms().map(|(e, _)| (e[..4].to_vec(), e[4])).collect();
    assert!(lattice_equivalence(&ours, &f0).is_some());

    let f0_poly = LaurentPoly::from_terms(5, f0.iter().map(|(e, t)| {
        let mut e = e.clone();
        e.push(*t);
        (e, int(1))
    }))
    .unwrap();
    // weights giving every monomial positive degree
    let grading = [1, 1, 1, -2, 3];
    let direct = period_ct(&f0_poly, &grading, 3, "q").unwrap();
    let system = sys.period(3).unwrap();
    assert_eq!(direct, system);
    for m in 0..=3u64 {
        assert_eq!(system.coeffs()[m as usize], x113_coefficient(m));
    }
    assert_eq!(system, modified_a_series(2, 5, &[1, 1, 3], 3));
}

#[test]
fn quartic_lax_is_lattice_equivalent_to_toric_family() {
    // X1 + X2 + X3 + X4 + z (X1X2X3)^-1 + X4^-1 X1 X2
    let family: Vec<(Vec<i64>, i64)> = vec![
        (vec![1, 0, 0, 0], 0),
        (vec![0, 1, 0, 0], 0),
        (vec![0, 0, 1, 0], 0),
        (vec![0, 0, 0, 1], 0),
        (vec![-1, -1, -1, 0], 1),
        (vec![1, 1, 0, -1], 0),
    ];
    let lax = lax_operator(2, 4).unwrap();
    let ours: Vec<(Vec<i64>, i64)> = lax.poly.terms().map(|(e, _)| (e[..4].to_vec(), e[4])).collect();
    assert!(lattice_equivalence(&ours, &family).is_some());
}

#[test]
fn second_gauge_keeps_x113_period() {
    let canonical = MirrorCoeffs::canonical(2, 5).unwrap();
    let lambda: Vec<BigRational> = [2, 3, 5, 7, 11, 13].iter().map(|&x| int(x)).collect();
    let other = canonical.rescaled(2, 5, &lambda).unwrap();
    let a = mirror_system(2, 5, &[1, 1, 3], &x113_partition(), &canonical).unwrap();
    let b = mirror_system(2, 5, &[1, 1, 3], &x113_partition(), &other).unwrap();
    assert_eq!(a.period(3).unwrap(), b.period(3).unwrap());
}
