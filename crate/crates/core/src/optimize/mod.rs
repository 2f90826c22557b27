//! Bounded heuristic optimisers with exact evaluation budgets and
//! best-so-far traces.
//!
//! Every optimiser minimises through a [`Problem`]; maximisation objectives
//! are negated by the [`Evaluator`], which also enforces the budget and
//! records the trace in the objective's own units. Runs are seeded with
//! `ChaCha8Rng::seed_from_u64(seed)` and are reproducible bit for bit.

mod benchmarks;
mod bounds;
mod cmaes;
mod config;
mod de;
mod ea;
mod evaluator;
mod hybrid;
mod nelder_mead;
mod pso;
mod stats;
mod sweep;

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Result, WecError};

pub use benchmarks::{benchmark_bounds, rastrigin, rosenbrock, shift, sphere, BENCHMARK_BOX};
pub use bounds::Bounds;
pub use cmaes::{cmaes, cmaes_observed, EigenObserver};
pub use config::{
    Algorithm, CmaEsParams, DeParams, EaParams, HybridParams, NelderMeadParams, OptimiserConfig, PsoParams,
    SadeParams,
};
pub use de::{binomial_crossover, differential_evolution, sade, Strategy, StrategyMemory};
pub use ea::{mutation_probability, mutation_sigmas, one_plus_one_ea};
pub use evaluator::{Block, Evaluator, ObjectiveFn, Problem, RunTrace, Sense, Stop};
pub use hybrid::{hybrid_de_nm, HybridBlocks};
pub use nelder_mead::nelder_mead;
pub use pso::{inertia_after, pso};
pub use stats::{median, quantile, BoxStats};
pub use sweep::{run_hybrid_de_nm, sweep_grid, SurfaceRow, SURFACE_HEADER};

fn finish(result: std::result::Result<(), Stop>) -> Result<()> {
    match result {
        Ok(()) | Err(Stop::Budget) => Ok(()),
        Err(Stop::Failed(e)) => Err(e),
    }
}

/// Runs one of the six stand-alone optimisers with seed `seed`.
pub fn optimise(
    objective: &ObjectiveFn<'_>,
    bounds: &Bounds,
    sense: Sense,
    config: &OptimiserConfig,
    seed: u64,
) -> Result<RunTrace> {
    config.validate()?;
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ev = Evaluator::new(objective, bounds.clone(), sense, config.budget);
    let result = match config.algorithm {
        Algorithm::NelderMead => nelder_mead(&mut ev, &mut rng, &config.nm, None),
        Algorithm::OnePlusOneEa => one_plus_one_ea(&mut ev, &mut rng, &config.ea),
        Algorithm::Pso => pso(&mut ev, &mut rng, &config.pso, None),
        Algorithm::CmaEs => cmaes(&mut ev, &mut rng, &config.cmaes),
        Algorithm::De => differential_evolution(&mut ev, &mut rng, &config.de, None),
        Algorithm::Sade => sade(&mut ev, &mut rng, &config.sade),
        Algorithm::HybridDeNm => {
            return Err(WecError::Config(
                "the hybrid scheme needs a coordinate partition; use run_hybrid_de_nm".into(),
            ))
        }
    };
    finish(result)?;
    Ok(ev.into_trace(config.algorithm, seed, started))
}

/// `config.repeats` independent runs with seeds `config.seed + r`, in
/// parallel. Results are in seed order.
pub fn run_repeats(
    objective: &ObjectiveFn<'_>,
    bounds: &Bounds,
    sense: Sense,
    config: &OptimiserConfig,
) -> Vec<Result<RunTrace>> {
    (0..config.repeats as u64)
        .into_par_iter()
        .map(|r| optimise(objective, bounds, sense, config, config.seed.wrapping_add(r)))
        .collect()
}

#[cfg(test)]
mod tests;
