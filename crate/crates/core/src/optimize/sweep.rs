use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Result, WecError};
use crate::objectives::{Objective, WecModel, GEOMETRY_ENTRIES};

use super::{
    hybrid_de_nm, Algorithm, Bounds, Evaluator, HybridBlocks, ObjectiveFn, OptimiserConfig, RunTrace, Sense,
    Stop,
};

pub const SURFACE_HEADER: &str = "a,aspect,objective_value,converged";

/// Hybrid DE-NM run with the coordinates in `fixed` frozen at the given
/// values. The remaining coordinates of `start` seed the NM block.
pub fn run_hybrid_de_nm(
    objective: &ObjectiveFn<'_>,
    bounds: &Bounds,
    sense: Sense,
    blocks: &HybridBlocks,
    start: Vec<f64>,
    config: &OptimiserConfig,
    seed: u64,
) -> Result<RunTrace> {
    config.validate()?;
    if start.len() != bounds.len() || !bounds.contains(&start) {
        return Err(WecError::Domain("hybrid start point outside the bounds".into()));
    }
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ev = Evaluator::new(objective, bounds.clone(), sense, config.budget);
    match hybrid_de_nm(&mut ev, &mut rng, config, blocks, start) {
        Ok(()) | Err(Stop::Budget) => {}
        Err(Stop::Failed(e)) => return Err(e),
    }
    Ok(ev.into_trace(Algorithm::HybridDeNm, seed, started))
}

/// One node of a radius/aspect-ratio surface.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurfaceRow {
    pub a: f64,
    pub aspect: f64,
    /// Best objective value; NaN for a failed node.
    pub objective_value: f64,
    /// Whether every sea state of the best design converged.
    pub converged: bool,
    pub error: Option<String>,
}

impl SurfaceRow {
    pub fn to_csv_line(&self) -> String {
        format!(
            "{},{},{},{}",
            self.a, self.aspect, self.objective_value, self.converged
        )
    }
}

fn sweep_node(
    model: &WecModel,
    objective: Objective,
    a: f64,
    aspect: f64,
    config: &OptimiserConfig,
    seed: u64,
) -> Result<SurfaceRow> {
    let space = model.space();
    let bounds = space.bounds();
    let mut start = bounds.midpoint();
    start[0] = a;
    start[1] = aspect;
    let n = space.dimension();
    let blocks = HybridBlocks {
        de: (GEOMETRY_ENTRIES..n).collect(),
        nm: vec![2, 3],
    };
    let f = |x: &[f64]| model.objective_at(objective, x);
    let trace = run_hybrid_de_nm(&f, &bounds, objective.sense(), &blocks, start, config, seed)?;
    let record = model.evaluate(&space.decode(&trace.best_design)?)?;
    Ok(SurfaceRow {
        a,
        aspect,
        objective_value: record.value(objective),
        converged: record.converged,
        error: None,
    })
}

/// Runs the hybrid scheme once per `(a, H/a)` node, in parallel, with node
/// `i` (row-major over `radii` x `aspects`) seeded `config.seed + i`. A
/// failing node is reported in its row and does not stop the sweep.
pub fn sweep_grid(
    model: &WecModel,
    objective: Objective,
    radii: &[f64],
    aspects: &[f64],
    config: &OptimiserConfig,
) -> Vec<SurfaceRow> {
    let nodes: Vec<(f64, f64)> = radii
        .iter()
        .flat_map(|&a| aspects.iter().map(move |&r| (a, r)))
        .collect();
    nodes
        .par_iter()
        .enumerate()
        .map(|(i, &(a, r))| {
            sweep_node(model, objective, a, r, config, config.seed.wrapping_add(i as u64)).unwrap_or_else(
                |e| SurfaceRow {
                    a,
                    aspect: r,
                    objective_value: f64::NAN,
                    converged: false,
                    error: Some(e.to_string()),
                },
            )
        })
        .collect()
}
