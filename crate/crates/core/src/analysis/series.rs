use alloc::vec::Vec;

use crate::error::{Error, Result};

/// One sample of a time series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesPoint {
    pub t: f64,
    pub value: f64,
    pub std_error: Option<f64>,
}

/// Measured or synthetic values against storage time.
///
/// Times are strictly increasing and values finite.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct DecaySeries {
    points: Vec<SeriesPoint>,
}

impl DecaySeries {
    pub fn new(points: Vec<SeriesPoint>) -> Result<Self> {
        for p in &points {
            if !p.t.is_finite() || !p.value.is_finite() {
                return Err(Error::invalid("series", "times and values must be finite"));
            }
            if let Some(se) = p.std_error {
                if !(se > 0.0 && se.is_finite()) {
                    return Err(Error::invalid("std_error", "must be positive and finite"));
                }
            }
        }
        if points.windows(2).any(|w| w[1].t <= w[0].t) {
            return Err(Error::invalid("series", "times must be strictly increasing"));
        }
        Ok(DecaySeries { points })
    }

    /// Series without per-point errors.
    pub fn from_pairs(t: &[f64], values: &[f64]) -> Result<Self> {
        if t.len() != values.len() {
            return Err(Error::invalid("series", "time and value columns differ in length"));
        }
        DecaySeries::new(t.iter().zip(values).map(|(&t, &value)| SeriesPoint { t, value, std_error: None }).collect())
    }

    pub fn points(&self) -> &[SeriesPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub(crate) fn has_errors(&self) -> bool {
        !self.points.is_empty() && self.points.iter().all(|p| p.std_error.is_some())
    }

    /// Least-squares weight of point `i`: `1/σ` with errors, otherwise 1.
    pub(crate) fn weight(&self, i: usize) -> f64 {
        if self.has_errors() {
            1.0 / self.points[i].std_error.unwrap_or(1.0)
        } else {
            1.0
        }
    }
}

/// A named fitted parameter with its one-sigma standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitParameter {
    pub name: &'static str,
    pub value: f64,
    pub std_error: f64,
}

/// Fitted parameters and fit diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    pub parameters: Vec<FitParameter>,
    /// Euclidean norm of the weighted residuals.
    pub residual_norm: f64,
    pub iterations: usize,
    /// Set when a bounded parameter was clamped to its range.
    pub clamped: bool,
}

impl FitResult {
    pub fn parameter(&self, name: &str) -> Option<&FitParameter> {
        self.parameters.iter().find(|p| p.name == name)
    }

    /// Value of parameter `name`.
    ///
    /// # Panics
    /// If the fit has no such parameter.
    pub fn value(&self, name: &str) -> f64 {
        match self.parameter(name) {
            Some(p) => p.value,
            None => panic!("fit has no parameter `{name}`"),
        }
    }
}
