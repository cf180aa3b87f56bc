//! Property tests for the series, Laurent, operator and instanton layers.

mod common;

use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use common::*;
use grassmirror::arith::rat;

const CASES: u32 = 256;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(CASES))]

    #[test]
    fn exp_inverts_log(f in series_with(BigRational::one())) {
        check_exp_log(&f)?;
    }

    #[test]
    fn log_inverts_exp(f in series_with(BigRational::zero())) {
        check_log_exp(&f)?;
    }

    #[test]
    fn reversion_is_compositional_inverse(f in reversible_series()) {
        check_reversion(&f)?;
    }

    #[test]
    fn inverse_times_series_is_one(f in series_with(rat(3, 2))) {
        check_inverse(&f)?;
    }

    #[test]
    fn laurent_ct_matches_tuple_sum(l in laurent(3), m in 0u32..=4) {
        check_laurent_ct(&l, m)?;
    }

    #[test]
    fn period_matches_tuple_sum((g, grading) in graded_laurent(), order in 0usize..=3) {
        check_period(&g, &grading, order)?;
    }

    #[test]
    fn pf_fit_recovers_hypergeometric_operator(c in 1i64..=5, alphas in proptest::collection::vec(alpha(), 1..=3)) {
        check_pf_fit(c, &alphas)?;
    }

    #[test]
    fn pf_fit_ignores_scaling(c in 1i64..=5, alphas in proptest::collection::vec(alpha(), 1..=2), s in small_rational()) {
        check_pf_fit_scaling(c, &alphas, &s)?;
    }

    #[test]
    fn canonical_is_idempotent_and_scale_free(
        terms in proptest::collection::vec((0usize..=2, 0usize..=3, small_rational()), 1..=6),
        s in small_rational(),
    ) {
        check_canonical(&terms, &s)?;
    }

    #[test]
    fn instantons_round_trip_through_lambert_series(
        n0 in 1i64..=100,
        ns in proptest::collection::vec(-10_000i64..=10_000, 1..=8),
    ) {
        check_instanton_round_trip(n0, &ns)?;
    }

    #[test]
    fn non_integral_lambert_series_is_rejected(n0 in 1i64..=100, bump in 1i64..=7) {
        check_non_integral_rejected(n0, bump)?;
    }
}
