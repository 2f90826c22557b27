use serde::{Deserialize, Serialize};

use crate::error::{Result, WecError};

/// Strictly increasing, positive angular frequencies in rad/s.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct FrequencyGrid {
    omegas: Vec<f64>,
}

impl FrequencyGrid {
    pub const DEFAULT_MIN: f64 = 0.1;
    pub const DEFAULT_MAX: f64 = 3.0;
    pub const DEFAULT_POINTS: usize = 60;

    pub fn new(omegas: Vec<f64>) -> Result<Self> {
        if omegas.len() < 2 {
            return Err(WecError::Domain(format!(
                "frequency grid needs at least 2 points, got {}",
                omegas.len()
            )));
        }
        if let Some(bad) = omegas.iter().find(|w| !(w.is_finite() && **w > 0.0)) {
            return Err(WecError::Domain(format!(
                "frequency grid entries must be finite and positive, got {bad}"
            )));
        }
        if let Some(i) = omegas.windows(2).position(|w| w[1] <= w[0]) {
            return Err(WecError::Domain(format!(
                "frequency grid not strictly increasing at index {}",
                i + 1
            )));
        }
        Ok(Self { omegas })
    }

    /// `points` frequencies evenly spaced on `[min, max]`, endpoints included.
    pub fn uniform(min: f64, max: f64, points: usize) -> Result<Self> {
        if points < 2 || !(min > 0.0) || !(max > min) {
            return Err(WecError::Domain(format!(
                "invalid uniform grid [{min}, {max}] with {points} points"
            )));
        }
        let step = (max - min) / (points - 1) as f64;
        let mut omegas: Vec<f64> = (0..points).map(|i| min + step * i as f64).collect();
        omegas[points - 1] = max;
        Self::new(omegas)
    }

    pub fn omegas(&self) -> &[f64] {
        &self.omegas
    }

    pub fn len(&self) -> usize {
        self.omegas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.omegas.is_empty()
    }

    pub fn min(&self) -> f64 {
        self.omegas[0]
    }

    pub fn max(&self) -> f64 {
        self.omegas[self.omegas.len() - 1]
    }

    /// Trapezoid rule of `values` sampled on this grid.
    pub fn integrate(&self, values: &[f64]) -> f64 {
        debug_assert_eq!(values.len(), self.omegas.len());
        self.omegas
            .windows(2)
            .zip(values.windows(2))
            .map(|(w, v)| 0.5 * (w[1] - w[0]) * (v[0] + v[1]))
            .sum()
    }

    /// Bracketing node index and convex weight of the upper node for `omega`,
    /// clamped to the tabulated range.
    pub(crate) fn locate(&self, omega: f64) -> (usize, f64) {
        let w = &self.omegas;
        if omega <= w[0] {
            return (0, 0.0);
        }
        let last = w.len() - 1;
        if omega >= w[last] {
            return (last - 1, 1.0);
        }
        let upper = w.partition_point(|&x| x <= omega);
        let lo = upper - 1;
        (lo, (omega - w[lo]) / (w[upper] - w[lo]))
    }
}

impl Default for FrequencyGrid {
    fn default() -> Self {
        Self::uniform(Self::DEFAULT_MIN, Self::DEFAULT_MAX, Self::DEFAULT_POINTS)
            .expect("default grid is valid")
    }
}

impl TryFrom<Vec<f64>> for FrequencyGrid {
    type Error = WecError;

    fn try_from(omegas: Vec<f64>) -> Result<Self> {
        Self::new(omegas)
    }
}

impl From<FrequencyGrid> for Vec<f64> {
    fn from(grid: FrequencyGrid) -> Self {
        grid.omegas
    }
}

/// A stationary irregular sea characterised by significant wave height and
/// peak period.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeaState {
    /// Significant wave height, m.
    pub hs: f64,
    /// Peak period, s.
    pub tp: f64,
}

impl SeaState {
    pub fn new(hs: f64, tp: f64) -> Result<Self> {
        let sea = Self { hs, tp };
        sea.validate()?;
        Ok(sea)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.hs.is_finite() && self.hs > 0.0) {
            return Err(WecError::Domain(format!(
                "significant wave height must be positive, got {}",
                self.hs
            )));
        }
        if !(self.tp.is_finite() && self.tp > 0.0) {
            return Err(WecError::Domain(format!(
                "peak period must be positive, got {}",
                self.tp
            )));
        }
        Ok(())
    }

    pub fn peak_frequency(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.tp
    }
}
