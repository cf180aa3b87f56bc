//! Registry of Calabi-Yau complete intersections with their expected
//! invariants and fixtures.

use std::path::Path;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::PowerSeries;
use crate::dop::DOp;
use crate::grass;

const DEFAULT_REGISTRY: &str = include_str!("../data/cy_cases.toml");
const SUPPORTED_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegistryError {
    #[error("cannot read registry: {0}")]
    Io(String),
    #[error("cannot parse registry: {0}")]
    Parse(String),
    #[error("unsupported registry version {0}")]
    Version(u32),
    #[error("case {case}: {msg}")]
    Schema { case: String, msg: String },
    #[error("case {case}: chi({space}) = {chi} but 2(h11 - h21) = {expected}")]
    Chi {
        case: String,
        space: &'static str,
        chi: i64,
        expected: i64,
    },
    #[error("no case named `{0}`")]
    UnknownCase(String),
}

pub type Result<T, E = RegistryError> = std::result::Result<T, E>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OperatorMatch {
    Exact,
    Annihilates,
}

/// One complete intersection `X_{d_1..d_r} ⊂ G(k,n)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CyCase {
    pub name: String,
    pub k: usize,
    pub n: usize,
    pub degrees: Vec<u32>,
    pub strata_degrees: Vec<u32>,
    pub h11_x: i64,
    pub h21_x: i64,
    pub chi_x: i64,
    pub h11_y: i64,
    pub h21_y: i64,
    pub chi_y: i64,
    pub alpha: i64,
    pub p: i64,
    #[serde(default)]
    pub instantons: Vec<u64>,
    #[serde(default)]
    pub operator: Option<String>,
    #[serde(default)]
    pub operator_match: Option<OperatorMatch>,
    #[serde(default)]
    pub yukawa_numerator: Vec<i64>,
    #[serde(default)]
    pub yukawa_denominator: Vec<i64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RegistryFile {
    version: u32,
    #[serde(rename = "case")]
    cases: Vec<CyCase>,
}

impl CyCase {
    /// `∏ d_i · deg G(k,n)`, the constant term of the Yukawa coupling.
    pub fn n0(&self) -> BigInt {
        let prod: BigInt = self.degrees.iter().map(|&d| BigInt::from(d)).product();
        prod * grass::degree_grassmannian(self.k, self.n).expect("validated shape")
    }

    pub fn hodge_x(&self) -> grass::Hodge {
        grass::Hodge::new(self.h11_x, self.h21_x)
    }

    pub fn hodge_y(&self) -> grass::Hodge {
        grass::Hodge::new(self.h11_y, self.h21_y)
    }

    pub fn node_count(&self) -> u64 {
        grass::node_count(&self.degrees, &self.strata_degrees)
    }

    pub fn operator_fixture(&self) -> Option<Result<DOp>> {
        self.operator.as_ref().map(|text| {
            DOp::parse(text).map_err(|e| RegistryError::Schema {
                case: self.name.clone(),
                msg: format!("operator fixture: {e}"),
            })
        })
    }

    /// Expansion of `numerator / denominator` in `z` to the given order.
    pub fn yukawa_fixture(&self, trunc: usize) -> Option<PowerSeries> {
        if self.yukawa_numerator.is_empty() || self.yukawa_denominator.is_empty() {
            return None;
        }
        let pad = |c: &[i64]| {
            let mut v: Vec<i64> = c.iter().copied().take(trunc + 1).collect();
            v.resize(trunc + 1, 0);
            PowerSeries::from_ints("z", &v).expect("nonempty")
        };
        let num = pad(&self.yukawa_numerator);
        let den = pad(&self.yukawa_denominator);
        num.div(&den).ok()
    }

    fn schema(&self, msg: impl Into<String>) -> RegistryError {
        RegistryError::Schema {
            case: self.name.clone(),
            msg: msg.into(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        grass::check_shape(self.k, self.n).map_err(|e| self.schema(e.to_string()))?;
        let total: u32 = self.degrees.iter().sum();
        if total as usize != self.n {
            return Err(self.schema(format!("degrees sum to {total}, expected n = {}", self.n)));
        }
        let alpha = grass::alpha(self.k, self.n);
        if self.alpha != alpha as i64 {
            return Err(self.schema(format!("alpha = {} but (k-1)(n-k-1) = {alpha}", self.alpha)));
        }
        if self.strata_degrees.len() != alpha {
            return Err(self.schema(format!(
                "{} strata degrees for {alpha} strata",
                self.strata_degrees.len()
            )));
        }
        for (space, h11, h21, chi) in [
            ("X", self.h11_x, self.h21_x, self.chi_x),
            ("Y", self.h11_y, self.h21_y, self.chi_y),
        ] {
            let expected = 2 * (h11 - h21);
            if chi != expected {
                return Err(RegistryError::Chi {
                    case: self.name.clone(),
                    space,
                    chi,
                    expected,
                });
            }
        }
        if self.operator.is_some() != self.operator_match.is_some() {
            return Err(self.schema("operator and operator_match must be given together"));
        }
        if let Some(op) = self.operator_fixture() {
            op?;
        }
        if self.yukawa_numerator.is_empty() != self.yukawa_denominator.is_empty() {
            return Err(self.schema("yukawa numerator and denominator must be given together"));
        }
        if self.yukawa_denominator.first().is_some_and(|&c| c == 0) {
            return Err(self.schema("yukawa denominator must not vanish at z = 0"));
        }
        Ok(())
    }
}

/// Parses and validates registry text.
pub fn parse_registry(text: &str) -> Result<Vec<CyCase>> {
    let file: RegistryFile = toml::from_str(text).map_err(|e| RegistryError::Parse(e.to_string()))?;
    if file.version != SUPPORTED_VERSION {
        return Err(RegistryError::Version(file.version));
    }
    let mut seen = std::collections::BTreeSet::new();
    for case in &file.cases {
        case.validate()?;
        if !seen.insert(case.name.clone()) {
            return Err(case.schema("duplicate case name"));
        }
    }
    Ok(file.cases)
}

pub fn registry_load(path: &Path) -> Result<Vec<CyCase>> {
    let text = std::fs::read_to_string(path).map_err(|e| RegistryError::Io(format!("{}: {e}", path.display())))?;
    parse_registry(&text)
}

/// The registry shipped with the crate.
pub fn default_registry() -> Vec<CyCase> {
    parse_registry(DEFAULT_REGISTRY).expect("bundled registry is valid")
}

pub fn find_case(cases: &[CyCase], name: &str) -> Result<CyCase> {
    cases
        .iter()
        .find(|c| c.name.eq_ignore_ascii_case(name))
        .cloned()
        .ok_or_else(|| RegistryError::UnknownCase(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_registry_has_six_cases() {
        let cases = default_registry();
        assert_eq!(cases.len(), 6);
        let g27 = find_case(&cases, "X1111111_G27").unwrap();
        assert_eq!((g27.alpha, g27.p), (4, 14));
    }

    #[test]
    fn inconsistent_chi_is_rejected() {
        let text = DEFAULT_REGISTRY.replacen("chi_x = -176", "chi_x = -170", 1);
        assert!(matches!(
            parse_registry(&text),
            Err(RegistryError::Chi { space: "X", chi: -170, .. })
        ));
    }

    #[test]
    fn schema_violations() {
        let text = DEFAULT_REGISTRY.replacen("degrees = [4]", "degrees = [3]", 1);
        assert!(matches!(parse_registry(&text), Err(RegistryError::Schema { .. })));
        let text = DEFAULT_REGISTRY.replacen("version = 1", "version = 2", 1);
        assert_eq!(parse_registry(&text), Err(RegistryError::Version(2)));
        assert!(matches!(parse_registry("version = 1\n[[case]]\nname = 3"), Err(RegistryError::Parse(_))));
    }

    #[test]
    fn yukawa_fixture_expansion() {
        let case = find_case(&default_registry(), "X4_G24").unwrap();
        let k = case.yukawa_fixture(3).unwrap();
        assert_eq!(k, PowerSeries::from_ints("z", &[8, 8192, 8388608, 8589934592]).unwrap());
    }
}
