//! Exact arithmetic substrate: rationals, truncated power series, log-extended
//! series, Laurent polynomials and integer polynomials.
//!
//! Every other module in the crate works on these types. Nothing here uses
//! floating point.

mod intpoly;
mod laurent;
pub mod linalg;
mod logseries;
mod multiseries;
mod series;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

pub use intpoly::IntPoly;
pub use laurent::{laurent_pow_ct, LaurentPoly};
pub use logseries::LogSeries;
pub use multiseries::MultiSeries;
pub use series::{series_exp_log, series_mul, series_revert, ExpLog, PowerSeries};

/// Errors raised by the arithmetic layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("series variable mismatch: `{left}` vs `{right}`")]
    VariableMismatch { left: String, right: String },
    #[error("coefficient {index} requested beyond truncation {trunc}")]
    BeyondTruncation { index: usize, trunc: usize },
    #[error("{op}: constant term must be {expected}, found {found}")]
    ConstantTerm {
        op: &'static str,
        expected: &'static str,
        found: String,
    },
    #[error("series reversion needs a(0) = 0 and a'(0) != 0")]
    NotRevertible,
    #[error("division by a series with zero constant term")]
    NotInvertible,
    #[error("cannot divide by z^{shift}: coefficient {index} is nonzero")]
    NonzeroLowCoefficient { shift: usize, index: usize },
    #[error("log-series components disagree on variable or truncation")]
    LogComponents,
    #[error("log degree {degree} exceeds the cap {cap}")]
    LogDegree { degree: usize, cap: usize },
    #[error("Laurent polynomial arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },
    #[error("cannot parse rational `{0}`")]
    ParseRational(String),
    #[error("empty coefficient list")]
    Empty,
}

pub type Result<T, E = ArithError> = std::result::Result<T, E>;

/// Shorthand for the rational `n/d`.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for the integer `n` as a rational.
pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn big(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// `n!` as a big integer.
pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// Table of `0!, 1!, ..., n!`.
pub fn factorials(n: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = BigInt::one();
    out.push(acc.clone());
    for i in 1..=n {
        acc *= i;
        out.push(acc.clone());
    }
    out
}

/// Binomial coefficient `C(n, k)`; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Pascal triangle up to row `n`, indexed `[n][k]`, with `C(n, k) = 0` for `k > n`.
#[derive(Debug, Clone)]
pub struct BinomialTable {
    rows: Vec<Vec<BigInt>>,
}

impl BinomialTable {
    pub fn new(n: usize) -> Self {
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let mut row = vec![BigInt::one(); i + 1];
            for k in 1..i {
                row[k] = &rows[i - 1][k - 1] + &rows[i - 1][k];
            }
            rows.push(row);
        }
        BinomialTable { rows }
    }

    pub fn get(&self, n: usize, k: usize) -> &BigInt {
        static ZERO: std::sync::OnceLock<BigInt> = std::sync::OnceLock::new();
        if k > n {
            return ZERO.get_or_init(BigInt::zero);
        }
        &self.rows[n][k]
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }
}

/// Formats a rational as `p/q`, or `p` when the denominator is one.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p`, `-p`, `p/q`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || ArithError::ParseRational(s.to_string());
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Least common multiple of the denominators of `values`.
pub fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    use num_integer::Integer;
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Integer `r` as a `BigInt`, if it is one.
pub fn as_integer(r: &BigRational) -> Option<BigInt> {
    r.is_integer().then(|| r.numer().clone())
}

/// Serde adapters that encode rationals as `"p/q"` strings.
pub mod serde_rational {
    use num_rational::BigRational;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        super::parse_rational(&s).map_err(D::Error::custom)
    }

    pub mod vec {
        use num_rational::BigRational;
        use serde::{de::Error, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for r in v {
                seq.serialize_element(&crate::arith::format_rational(r))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
            let v = Vec::<String>::deserialize(d)?;
            v.iter()
                .map(|s| crate::arith::parse_rational(s).map_err(D::Error::custom))
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_are_reduced() {
        let r = rat(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(rat(0, 5), int(0));
        assert_eq!(rat(0, 5).denom(), &BigInt::from(1));
    }

    #[test]
    fn rational_text_round_trip() {
        for s in ["0", "7", "-3/8", "123456789012345678901234567891/2"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(parse_rational("4/6").unwrap(), rat(2, 3));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn binomials_agree_with_table() {
        let t = BinomialTable::new(30);
        for n in 0..=30u64 {
            for k in 0..=32u64 {
                assert_eq!(&binomial(n, k), t.get(n as usize, k as usize));
            }
        }
        assert_eq!(binomial(4, 2), BigInt::from(6));
    }

    #[test]
    fn factorial_table() {
        let f = factorials(10);
        assert_eq!(f[10], BigInt::from(3628800));
        assert_eq!(factorial(10), f[10]);
        assert_eq!(factorial(0), BigInt::one());
    }
}
