use rand::Rng;

use super::{Problem, PsoParams, Stop};

/// Inertia weight after `iterations` completed iterations.
pub fn inertia_after(params: &PsoParams, iterations: usize) -> f64 {
    params.inertia * params.inertia_damping.powi(iterations as i32)
}

/// Global-best particle swarm. Particles start at rest; a coordinate clamped
/// to a bound loses its velocity.
pub fn pso<R: Rng + ?Sized>(
    problem: &mut dyn Problem,
    rng: &mut R,
    params: &PsoParams,
    initial: Option<Vec<Vec<f64>>>,
) -> Result<(), Stop> {
    let bounds = problem.bounds().clone();
    let n = bounds.len();
    let vmax: Vec<f64> = (0..n)
        .map(|i| params.max_velocity_fraction * bounds.range(i))
        .collect();
    let mut x = initial.unwrap_or_else(|| (0..params.particles).map(|_| bounds.sample(rng)).collect());
    let mut v = vec![vec![0.0; n]; x.len()];
    let mut pbest = x.clone();
    let mut pbest_f = Vec::with_capacity(x.len());
    for p in &mut x {
        bounds.clamp(p);
        pbest_f.push(problem.evaluate(p)?);
    }
    pbest.clone_from(&x);
    let g = (0..x.len())
        .min_by(|&a, &b| pbest_f[a].total_cmp(&pbest_f[b]))
        .unwrap_or(0);
    let mut gbest = pbest[g].clone();
    let mut gbest_f = pbest_f[g];

    let mut w = params.inertia;
    loop {
        for k in 0..x.len() {
            for i in 0..n {
                let r1: f64 = rng.random();
                let r2: f64 = rng.random();
                let vi = w * v[k][i]
                    + params.cognitive * r1 * (pbest[k][i] - x[k][i])
                    + params.social * r2 * (gbest[i] - x[k][i]);
                v[k][i] = vi.clamp(-vmax[i], vmax[i]);
                let moved = x[k][i] + v[k][i];
                let clamped = bounds.clamp_coord(i, moved);
                if clamped != moved {
                    v[k][i] = 0.0;
                }
                x[k][i] = clamped;
            }
            let f = problem.evaluate(&x[k])?;
            if f < pbest_f[k] {
                pbest_f[k] = f;
                pbest[k].clone_from(&x[k]);
                if f < gbest_f {
                    gbest_f = f;
                    gbest.clone_from(&x[k]);
                }
            }
        }
        w *= params.inertia_damping;
    }
}
