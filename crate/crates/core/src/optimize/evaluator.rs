use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::WecError;

use super::{Algorithm, Bounds};

/// Objective in search coordinates. Errors abort the run.
pub type ObjectiveFn<'a> = dyn Fn(&[f64]) -> crate::Result<f64> + Sync + 'a;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sense {
    Minimise,
    Maximise,
}

impl Sense {
    /// Maps an objective value to the internal minimisation scale.
    pub fn to_min(self, v: f64) -> f64 {
        match self {
            Sense::Minimise => v,
            Sense::Maximise => -v,
        }
    }

    pub fn from_min(self, v: f64) -> f64 {
        self.to_min(v)
    }

    /// Whether `a` is at least as good as `b`.
    pub fn not_worse(self, a: f64, b: f64) -> bool {
        match self {
            Sense::Minimise => a <= b,
            Sense::Maximise => a >= b,
        }
    }
}

/// Why an optimiser stopped early.
#[derive(Debug)]
pub enum Stop {
    /// Evaluation budget exhausted (the normal end of a run).
    Budget,
    Failed(WecError),
}

impl From<WecError> for Stop {
    fn from(e: WecError) -> Self {
        Stop::Failed(e)
    }
}

/// A bounded minimisation problem as seen by an optimiser.
pub trait Problem {
    fn bounds(&self) -> &Bounds;

    /// Minimisation-scale value of `x`, which must lie within the bounds.
    fn evaluate(&mut self, x: &[f64]) -> Result<f64, Stop>;

    /// Evaluations left before the problem stops the optimiser.
    fn remaining(&self) -> usize;
}

/// Budget-enforcing wrapper around an objective that records the
/// best-so-far trace.
pub struct Evaluator<'a> {
    objective: &'a ObjectiveFn<'a>,
    bounds: Bounds,
    sense: Sense,
    budget: usize,
    trace: Vec<f64>,
    best: f64,
    best_x: Vec<f64>,
    out_of_bounds: usize,
}

impl<'a> Evaluator<'a> {
    pub fn new(objective: &'a ObjectiveFn<'a>, bounds: Bounds, sense: Sense, budget: usize) -> Self {
        Self {
            objective,
            best_x: bounds.midpoint(),
            bounds,
            sense,
            budget,
            trace: Vec::with_capacity(budget),
            best: f64::INFINITY,
            out_of_bounds: 0,
        }
    }

    pub fn count(&self) -> usize {
        self.trace.len()
    }

    /// Best point so far, search coordinates.
    pub fn best_x(&self) -> &[f64] {
        &self.best_x
    }

    /// Best minimisation-scale value so far.
    pub fn best(&self) -> f64 {
        self.best
    }

    /// Number of requests that arrived outside the bounds (and were
    /// clamped). Always zero for a correct optimiser.
    pub fn out_of_bounds(&self) -> usize {
        self.out_of_bounds
    }

    pub fn into_trace(self, algorithm: Algorithm, seed: u64, started: Instant) -> RunTrace {
        let evaluations = self.trace.len();
        RunTrace {
            algorithm,
            seed,
            sense: self.sense,
            best_value: self.sense.from_min(self.best),
            best_design: self.best_x,
            best_so_far: self.trace,
            evaluations,
            out_of_bounds: self.out_of_bounds,
            wall_time: started.elapsed().as_secs_f64(),
        }
    }
}

impl Problem for Evaluator<'_> {
    fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    fn evaluate(&mut self, x: &[f64]) -> Result<f64, Stop> {
        if self.trace.len() >= self.budget {
            return Err(Stop::Budget);
        }
        let mut point = x.to_vec();
        if point.len() != self.bounds.len() || point.iter().any(|v| !v.is_finite()) {
            return Err(Stop::Failed(WecError::Domain(format!(
                "optimiser proposed a malformed point of length {}",
                point.len()
            ))));
        }
        if self.bounds.clamp(&mut point) {
            self.out_of_bounds += 1;
        }
        let value = self.sense.to_min((self.objective)(&point)?);
        // NaN never becomes the incumbent
        let value = if value.is_nan() { f64::INFINITY } else { value };
        if value < self.best || self.trace.is_empty() {
            self.best = value;
            self.best_x = point;
        }
        self.trace.push(self.sense.from_min(self.best));
        Ok(value)
    }

    fn remaining(&self) -> usize {
        self.budget - self.trace.len()
    }
}

/// View of a subset of coordinates of another problem, with the remaining
/// coordinates frozen and an optional local evaluation cap.
pub struct Block<'p> {
    inner: &'p mut dyn Problem,
    base: Vec<f64>,
    indices: Vec<usize>,
    bounds: Bounds,
    remaining: usize,
    best: f64,
    best_x: Vec<f64>,
}

impl<'p> Block<'p> {
    pub fn new(
        inner: &'p mut dyn Problem,
        base: Vec<f64>,
        indices: Vec<usize>,
        cap: usize,
    ) -> crate::Result<Self> {
        let bounds = inner.bounds().select(&indices)?;
        let best_x = indices.iter().map(|&i| base[i]).collect();
        Ok(Self {
            inner,
            base,
            indices,
            bounds,
            remaining: cap,
            best: f64::INFINITY,
            best_x,
        })
    }

    /// Best block point seen, and its value.
    pub fn best(&self) -> (&[f64], f64) {
        (&self.best_x, self.best)
    }

    /// Full-space point for block coordinates `x`.
    pub fn embed(&self, x: &[f64]) -> Vec<f64> {
        let mut full = self.base.clone();
        for (k, &i) in self.indices.iter().enumerate() {
            full[i] = x[k];
        }
        full
    }
}

impl Problem for Block<'_> {
    fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    fn evaluate(&mut self, x: &[f64]) -> Result<f64, Stop> {
        if self.remaining() == 0 {
            return Err(Stop::Budget);
        }
        let full = self.embed(x);
        let value = self.inner.evaluate(&full)?;
        self.remaining -= 1;
        if value < self.best {
            self.best = value;
            self.best_x = x.to_vec();
        }
        Ok(value)
    }

    fn remaining(&self) -> usize {
        self.remaining.min(self.inner.remaining())
    }
}

/// Record of one optimiser run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunTrace {
    pub algorithm: Algorithm,
    pub seed: u64,
    pub sense: Sense,
    /// Best objective value after each evaluation, in objective units.
    pub best_so_far: Vec<f64>,
    /// Best point, search coordinates.
    pub best_design: Vec<f64>,
    pub best_value: f64,
    pub evaluations: usize,
    /// Proposals that had to be clamped by the evaluator.
    pub out_of_bounds: usize,
    /// Seconds.
    pub wall_time: f64,
}

impl RunTrace {
    /// `evaluation_index,best_value` with 1-based indices.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("evaluation_index,best_value\n");
        for (i, v) in self.best_so_far.iter().enumerate() {
            out.push_str(&format!("{},{}\n", i + 1, v));
        }
        out
    }

    pub fn is_monotone(&self) -> bool {
        self.best_so_far
            .windows(2)
            .all(|w| self.sense.not_worse(w[1], w[0]))
    }
}
