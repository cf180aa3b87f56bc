use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::{ArithError, PowerSeries, Result};

/// `Σ_j f_j(z) (log z)^j / j!`, stored as the component list `[f_0, f_1, ...]`.
///
/// All components share variable and truncation. Trailing zero components are
/// dropped, so the zero log-series is a single zero component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LogSeries {
    components: Vec<PowerSeries>,
}

impl LogSeries {
    pub fn new(components: Vec<PowerSeries>) -> Result<Self> {
        let first = components.first().ok_or(ArithError::Empty)?;
        if components
            .iter()
            .any(|c| c.var() != first.var() || c.trunc() != first.trunc())
        {
            return Err(ArithError::LogComponents);
        }
        let mut out = LogSeries { components };
        out.normalize();
        Ok(out)
    }

    pub fn from_series(f: PowerSeries) -> Self {
        LogSeries {
            components: vec![f],
        }
    }

    fn normalize(&mut self) {
        while self.components.len() > 1 && self.components.last().is_some_and(PowerSeries::is_zero) {
            self.components.pop();
        }
    }

    /// Highest power of `log z` present.
    pub fn log_degree(&self) -> usize {
        self.components.len() - 1
    }

    pub fn components(&self) -> &[PowerSeries] {
        &self.components
    }

    /// Component `f_j`, or the zero series when `j` exceeds the log degree.
    pub fn component(&self, j: usize) -> PowerSeries {
        self.components.get(j).cloned().unwrap_or_else(|| {
            PowerSeries::zero(self.var().to_string(), self.trunc())
        })
    }

    pub fn var(&self) -> &str {
        self.components[0].var()
    }

    pub fn trunc(&self) -> usize {
        self.components[0].trunc()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(PowerSeries::is_zero)
    }

    /// `z d/dz`: on components, `(D F)_j = D f_j + f_{j+1}`.
    pub fn theta(&self) -> Self {
        let n = self.components.len();
        let components = (0..n)
            .map(|j| {
                let d = self.components[j].theta();
                match self.components.get(j + 1) {
                    Some(next) => d.add(next).expect("shared variable"),
                    None => d,
                }
            })
            .collect();
        let mut out = LogSeries { components };
        out.normalize();
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let n = self.components.len().max(other.components.len());
        let comps = (0..n)
            .map(|j| self.component(j).add(&other.component(j)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(comps)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = LogSeries {
            components: self.components.iter().map(|f| f.scale(c)).collect(),
        };
        out.normalize();
        out
    }

    /// Multiplies every component by a plain power series.
    pub fn mul_series(&self, g: &PowerSeries) -> Result<Self> {
        let comps = self
            .components
            .iter()
            .map(|f| f.mul(g))
            .collect::<Result<Vec<_>>>()?;
        Self::new(comps)
    }

    /// Multiplies by `z^i`.
    pub fn shift_up(&self, i: usize) -> Self {
        LogSeries {
            components: self.components.iter().map(|f| f.shift_up(i)).collect(),
        }
    }

    pub fn truncate(&self, trunc: usize) -> Result<Self> {
        Self::new(
            self.components
                .iter()
                .map(|f| f.truncate(trunc))
                .collect::<Result<Vec<_>>>()?,
        )
    }

    /// True when every coefficient of every component vanishes.
    pub fn vanishes(&self) -> bool {
        self.components
            .iter()
            .all(|f| f.coeffs().iter().all(Zero::is_zero))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_of_log() {
        // D(log z) = 1
        let zero = PowerSeries::zero("z", 3);
        let one = PowerSeries::one("z", 3);
        let log = LogSeries::new(vec![zero.clone(), one.clone()]).unwrap();
        assert_eq!(log.theta(), LogSeries::from_series(one));
        assert_eq!(log.theta().theta(), LogSeries::from_series(zero));
    }

    #[test]
    fn trailing_zero_components_are_dropped() {
        let zero = PowerSeries::zero("z", 2);
        let one = PowerSeries::one("z", 2);
        let l = LogSeries::new(vec![one, zero.clone(), zero]).unwrap();
        assert_eq!(l.log_degree(), 0);
    }

    #[test]
    fn mismatched_components_rejected() {
        let a = PowerSeries::zero("z", 2);
        let b = PowerSeries::zero("z", 3);
        assert_eq!(LogSeries::new(vec![a, b]), Err(ArithError::LogComponents));
    }
}
