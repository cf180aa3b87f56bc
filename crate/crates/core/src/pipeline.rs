//! End-to-end computation for one registry case: A-series, factorial
//! modification, operator fit, Frobenius solutions, Yukawa couplings and
//! instanton numbers, compared against the registry expectations.

use std::time::Instant;

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::arith::{format_rational, PowerSeries};
use crate::dop::{pf_fit, DOp, DOpError, FitBounds};
use crate::hypergeom::{a_series_specialized, factorial_trick, ASeriesSpec, FactorialBundle, HypergeomError};
use crate::mirror::{self, MirrorError};
use crate::registry::{CyCase, OperatorMatch, RegistryError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Arith(#[from] crate::arith::ArithError),
    #[error(transparent)]
    Series(#[from] HypergeomError),
    #[error(transparent)]
    Operator(#[from] DOpError),
    #[error(transparent)]
    Mirror(#[from] MirrorError),
    #[error(transparent)]
    Registry(#[from] RegistryError),
    #[error("requested truncation {requested} exceeds the cap {cap}")]
    TruncationCap { requested: usize, cap: usize },
}

pub type Result<T, E = PipelineError> = std::result::Result<T, E>;

/// Truncation orders and fit bounds for a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PipelineConfig {
    pub fit_order: usize,
    pub fit_zdeg: usize,
    pub fit_guard: usize,
    /// Order to which the fixture operator must annihilate the series.
    pub annihilation_order: usize,
    pub yukawa_order: usize,
    pub instanton_count: usize,
    pub max_trunc: usize,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            fit_order: 4,
            fit_zdeg: 5,
            fit_guard: 10,
            annihilation_order: 20,
            yukawa_order: 12,
            instanton_count: 5,
            max_trunc: crate::hypergeom::DEFAULT_MAX_TRUNC,
        }
    }
}

impl PipelineConfig {
    /// Number of series coefficients needed by the fit and the fixture check.
    pub fn series_trunc(&self) -> usize {
        let fit = (self.fit_order + 1) * (self.fit_zdeg + 1) + self.fit_guard;
        fit.max(self.annihilation_order)
    }
}

/// One expected-vs-computed comparison.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diff {
    pub field: String,
    pub expected: String,
    pub computed: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub case: String,
    pub operator: String,
    pub operator_match: Option<OperatorMatch>,
    /// Fixture operator equals the fitted operator in canonical form.
    pub operator_equal: Option<bool>,
    /// Fixture operator annihilates the modified series to the configured order.
    pub operator_annihilates: Option<bool>,
    pub kz_fixture_match: Option<bool>,
    pub kz_series: Vec<String>,
    pub n0: String,
    pub instantons: Vec<String>,
    pub expected_instantons: Vec<String>,
    pub diffs: Vec<Diff>,
    pub pass: bool,
    pub elapsed_ms: u128,
}

/// `∏ (d_i m)! · A_m`, renamed to the variable `z`.
pub fn modified_series(case: &CyCase, trunc: usize, max_trunc: usize) -> Result<PowerSeries> {
    if trunc > max_trunc {
        return Err(PipelineError::TruncationCap {
            requested: trunc,
            cap: max_trunc,
        });
    }
    let spec = ASeriesSpec::new(case.k, case.n, trunc).max_trunc(max_trunc);
    let a = a_series_specialized(&spec)?;
    Ok(factorial_trick(&a, &FactorialBundle::new(case.degrees.clone())).with_var("z"))
}

/// Fits the Picard-Fuchs operator of the modified series.
pub fn fit_operator(case: &CyCase, config: &PipelineConfig) -> Result<(DOp, PowerSeries)> {
    let series = modified_series(case, config.series_trunc(), config.max_trunc)?;
    let bounds = FitBounds {
        max_order: config.fit_order,
        max_zdeg: config.fit_zdeg,
        guard: config.fit_guard,
    };
    let op = pf_fit(&series, bounds)?;
    Ok((op, series))
}

fn push_diff(diffs: &mut Vec<Diff>, field: &str, expected: impl ToString, computed: impl ToString) {
    diffs.push(Diff {
        field: field.to_string(),
        expected: expected.to_string(),
        computed: computed.to_string(),
    });
}

/// Runs the full pipeline for `case` and compares every expected field.
pub fn run_case(case: &CyCase, config: &PipelineConfig) -> Result<RunReport> {
    let start = Instant::now();
    let mut diffs = Vec::new();
    let (op, series) = fit_operator(case, config)?;

    let mut operator_equal = None;
    let mut operator_annihilates = None;
    if let Some(fixture) = case.operator_fixture() {
        let fixture = fixture?.with_var("z");
        let equal = fixture.canonical() == op;
        let residual = fixture.apply(&series.truncate(config.annihilation_order)?)?;
        let annihilates = residual.coeffs().iter().all(num_traits::Zero::is_zero);
        operator_equal = Some(equal);
        operator_annihilates = Some(annihilates);
        let ok = match case.operator_match {
            Some(OperatorMatch::Exact) => equal,
            _ => annihilates,
        };
        if !ok {
            push_diff(&mut diffs, "operator", fixture.canonical(), &op);
        }
    }

    let n0 = case.n0();
    let data = mirror::yukawa_data(&op, &n0, config.yukawa_order, config.instanton_count)?;

    let kz_fixture_match = case.yukawa_fixture(config.yukawa_order).map(|fixture| {
        let computed = data.kz3.truncate(config.yukawa_order).expect("computed to this order");
        let ok = fixture == computed;
        if !ok {
            push_diff(&mut diffs, "kz3", series_string(&fixture), series_string(&computed));
        }
        ok
    });

    let expected: Vec<BigInt> = case.instantons.iter().map(|&v| BigInt::from(v)).collect();
    let upto = expected.len().min(data.instantons.len());
    if data.instantons[..upto] != expected[..upto] {
        push_diff(&mut diffs, "instantons", join(&expected[..upto]), join(&data.instantons[..upto]));
    }

    Ok(RunReport {
        case: case.name.clone(),
        operator: op.to_string(),
        operator_match: case.operator_match,
        operator_equal,
        operator_annihilates,
        kz_fixture_match,
        kz_series: data.kz3.coeffs().iter().map(format_rational).collect(),
        n0: n0.to_string(),
        instantons: data.instantons.iter().map(BigInt::to_string).collect(),
        expected_instantons: expected.iter().map(BigInt::to_string).collect(),
        pass: diffs.is_empty(),
        diffs,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

fn series_string(s: &PowerSeries) -> String {
    s.coeffs().iter().map(format_rational).collect::<Vec<_>>().join(", ")
}

fn join(v: &[BigInt]) -> String {
    v.iter().map(BigInt::to_string).collect::<Vec<_>>().join(", ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::registry::{default_registry, find_case};

    #[test]
    fn quartic_case_runs() {
        let case = find_case(&default_registry(), "X4_G24").unwrap();
        let report = run_case(&case, &PipelineConfig::default()).unwrap();
        assert!(report.pass, "{:?}", report.diffs);
        assert_eq!(report.operator_equal, Some(true));
        assert_eq!(report.kz_fixture_match, Some(true));
        assert_eq!(report.instantons.len(), 5);
    }

    #[test]
    fn truncation_cap_is_enforced() {
        let case = find_case(&default_registry(), "X4_G24").unwrap();
        assert!(matches!(
            modified_series(&case, 50, 40),
            Err(PipelineError::TruncationCap { requested: 50, cap: 40 })
        ));
    }
}
