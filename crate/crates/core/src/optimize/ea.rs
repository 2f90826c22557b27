use rand::Rng;
use rand_distr::{Distribution, Normal};

use super::{Bounds, EaParams, Problem, Stop};

/// Probability with which each coordinate is mutated.
pub fn mutation_probability(dim: usize) -> f64 {
    1.0 / dim as f64
}

/// Mutation standard deviation of every coordinate.
pub fn mutation_sigmas(bounds: &Bounds, params: &EaParams) -> Vec<f64> {
    (0..bounds.len())
        .map(|i| params.sigma_fraction * bounds.range(i))
        .collect()
}

/// (1+1) evolutionary algorithm with fixed Gaussian mutation.
pub fn one_plus_one_ea<R: Rng + ?Sized>(
    problem: &mut dyn Problem,
    rng: &mut R,
    params: &EaParams,
) -> Result<(), Stop> {
    let bounds = problem.bounds().clone();
    let p = mutation_probability(bounds.len());
    let normals: Vec<Normal<f64>> = mutation_sigmas(&bounds, params)
        .into_iter()
        .map(|s| Normal::new(0.0, s).expect("positive sigma"))
        .collect();
    let mut parent = bounds.sample(rng);
    let mut parent_f = problem.evaluate(&parent)?;
    loop {
        let mut child = parent.clone();
        for (i, v) in child.iter_mut().enumerate() {
            if rng.random::<f64>() < p {
                *v = bounds.clamp_coord(i, *v + normals[i].sample(rng));
            }
        }
        let f = problem.evaluate(&child)?;
        if f <= parent_f {
            parent = child;
            parent_f = f;
        }
    }
}
