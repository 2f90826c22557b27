use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Result, WecError};

/// Box constraints of a search space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Bounds {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl Bounds {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.is_empty() || lower.len() != upper.len() {
            return Err(WecError::Config(format!(
                "bounds need matching non-empty vectors ({} vs {})",
                lower.len(),
                upper.len()
            )));
        }
        for (i, (lo, hi)) in lower.iter().zip(&upper).enumerate() {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(WecError::Config(format!(
                    "bound {i}: [{lo}, {hi}] is not a finite interval"
                )));
            }
        }
        Ok(Self { lower, upper })
    }

    /// The same interval in every coordinate.
    pub fn uniform(dim: usize, lower: f64, upper: f64) -> Result<Self> {
        Self::new(vec![lower; dim], vec![upper; dim])
    }

    pub fn len(&self) -> usize {
        self.lower.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lower.is_empty()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn range(&self, i: usize) -> f64 {
        self.upper[i] - self.lower[i]
    }

    pub fn midpoint(&self) -> Vec<f64> {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(l, u)| 0.5 * (l + u))
            .collect()
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.len()
            && x.iter()
                .enumerate()
                .all(|(i, v)| *v >= self.lower[i] && *v <= self.upper[i])
    }

    pub fn clamp_coord(&self, i: usize, v: f64) -> f64 {
        v.clamp(self.lower[i], self.upper[i])
    }

    /// Clamps in place; returns whether any coordinate moved.
    pub fn clamp(&self, x: &mut [f64]) -> bool {
        let mut moved = false;
        for (i, v) in x.iter_mut().enumerate() {
            let c = self.clamp_coord(i, *v);
            if c != *v {
                *v = c;
                moved = true;
            }
        }
        moved
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        (0..self.len())
            .map(|i| rng.random_range(self.lower[i]..=self.upper[i]))
            .collect()
    }

    /// Bounds of the coordinates in `indices`.
    pub fn select(&self, indices: &[usize]) -> Result<Self> {
        Self::new(
            indices.iter().map(|&i| self.lower[i]).collect(),
            indices.iter().map(|&i| self.upper[i]).collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rejects_degenerate_intervals() {
        assert!(Bounds::new(vec![0.0], vec![0.0]).is_err());
        assert!(Bounds::new(vec![0.0, 1.0], vec![1.0]).is_err());
        assert!(Bounds::new(vec![], vec![]).is_err());
        assert!(Bounds::new(vec![f64::NAN], vec![1.0]).is_err());
    }

    proptest! {
        #[test]
        fn clamp_lands_inside(x in proptest::collection::vec(-1e3f64..1e3, 4)) {
            let b = Bounds::new(vec![-1.0, 0.0, 3.0, -50.0], vec![1.0, 10.0, 8.0, 50.0]).unwrap();
            let mut y = x.clone();
            b.clamp(&mut y);
            prop_assert!(b.contains(&y));
            for i in 0..4 {
                if b.contains(&x) {
                    prop_assert_eq!(x[i], y[i]);
                }
            }
        }
    }
}
