use std::ops::Index;

use crate::error::{Error, Result};

/// A finite, non-empty sequence of real amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    values: Vec<f64>,
}

impl TimeSeries {
    /// Builds a series, rejecting empty input and non-finite values.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::data("time series must contain at least one value"));
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::data(format!(
                "time series value at position {} is not finite",
                pos + 1
            )));
        }
        Ok(Self { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Always false; kept for API symmetry with slices.
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Caller guarantees the values are finite and non-empty.
    pub(crate) fn from_vec_unchecked(values: Vec<f64>) -> Self {
        debug_assert!(!values.is_empty() && values.iter().all(|v| v.is_finite()));
        Self { values }
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Value at a 1-based index.
    pub fn at(&self, index: usize) -> f64 {
        self.values[index - 1]
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    /// Population standard deviation.
    pub fn std_dev(&self) -> f64 {
        let mean = self.mean();
        let var = self.values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / self.values.len() as f64;
        var.sqrt()
    }
}

impl TryFrom<Vec<f64>> for TimeSeries {
    type Error = Error;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        TimeSeries::new(values)
    }
}

impl TryFrom<&[f64]> for TimeSeries {
    type Error = Error;

    fn try_from(values: &[f64]) -> Result<Self> {
        TimeSeries::new(values.to_vec())
    }
}

impl AsRef<[f64]> for TimeSeries {
    fn as_ref(&self) -> &[f64] {
        &self.values
    }
}

impl Index<usize> for TimeSeries {
    type Output = f64;

    /// 0-based access, as for the underlying slice.
    fn index(&self, index: usize) -> &f64 {
        &self.values[index]
    }
}
