use std::collections::BTreeMap;

use super::NumericsError;

/// Sampled solution: strictly increasing times, one state per time, and
/// named per-sample series (conserved quantities, diagnostics).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<Vec<f64>>,
    pub meta: BTreeMap<String, Vec<f64>>,
}

impl Trajectory {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn push(&mut self, t: f64, state: Vec<f64>) {
        self.times.push(t);
        self.states.push(state);
    }

    /// Time series of one state component.
    pub fn component(&self, index: usize) -> Vec<f64> {
        self.states.iter().map(|s| s[index]).collect()
    }

    pub fn set_meta(&mut self, name: &str, values: Vec<f64>) {
        self.meta.insert(name.to_string(), values);
    }

    pub fn meta(&self, name: &str) -> Option<&[f64]> {
        self.meta.get(name).map(Vec::as_slice)
    }

    /// Largest `|q(t) − q(t0)|` of a recorded series.
    pub fn drift(&self, name: &str) -> Option<f64> {
        let values = self.meta.get(name)?;
        let first = *values.first()?;
        Some(values.iter().map(|v| (v - first).abs()).fold(0.0, f64::max))
    }

    pub fn validate(&self) -> Result<(), NumericsError> {
        if self.states.len() != self.times.len() {
            return Err(NumericsError::InvalidTrajectory("state count differs from time count"));
        }
        if self.times.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(NumericsError::InvalidTrajectory("times are not strictly increasing"));
        }
        if self.meta.values().any(|v| v.len() != self.times.len()) {
            return Err(NumericsError::InvalidTrajectory("meta series length differs from time count"));
        }
        Ok(())
    }
}

/// `n` equally spaced samples covering `[t0, t1]` inclusive.
pub fn uniform_grid(t0: f64, t1: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![t0],
        _ => {
            let step = (t1 - t0) / (n - 1) as f64;
            let mut g: Vec<f64> = (0..n).map(|i| t0 + step * i as f64).collect();
            g[n - 1] = t1;
            g
        }
    }
}
