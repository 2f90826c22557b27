use rand::Rng;

use super::{NelderMeadParams, Problem, Stop};

/// Nelder-Mead simplex search from a random simplex. When `start` is given it
/// replaces the first random vertex. Returns only when the problem stops it.
pub fn nelder_mead<R: Rng + ?Sized>(
    problem: &mut dyn Problem,
    rng: &mut R,
    params: &NelderMeadParams,
    start: Option<&[f64]>,
) -> Result<(), Stop> {
    let bounds = problem.bounds().clone();
    let n = bounds.len();
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut x = match (k, start) {
            (0, Some(s)) => s.to_vec(),
            _ => bounds.sample(rng),
        };
        bounds.clamp(&mut x);
        let f = problem.evaluate(&x)?;
        simplex.push((x, f));
    }

    let point = |from: &[f64], to: &[f64], t: f64| -> Vec<f64> {
        let mut p: Vec<f64> = from.iter().zip(to).map(|(a, b)| a + t * (b - a)).collect();
        bounds.clamp(&mut p);
        p
    };

    loop {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let mut centroid = vec![0.0; n];
        for (x, _) in &simplex[..n] {
            for (c, v) in centroid.iter_mut().zip(x) {
                *c += v / n as f64;
            }
        }
        let (best_f, second_worst_f) = (simplex[0].1, simplex[n - 1].1);
        let (worst_x, worst_f) = simplex[n].clone();

        let xr = point(&centroid, &worst_x, -params.reflection);
        let fr = problem.evaluate(&xr)?;
        if fr < best_f {
            let xe = point(&centroid, &xr, params.expansion);
            let fe = problem.evaluate(&xe)?;
            simplex[n] = if fe < fr { (xe, fe) } else { (xr, fr) };
            continue;
        }
        if fr < second_worst_f {
            simplex[n] = (xr, fr);
            continue;
        }
        let (xc, fc, accepted) = if fr < worst_f {
            let xc = point(&centroid, &xr, params.contraction);
            let fc = problem.evaluate(&xc)?;
            (xc, fc, fc <= fr)
        } else {
            let xc = point(&centroid, &worst_x, params.contraction);
            let fc = problem.evaluate(&xc)?;
            (xc, fc, fc < worst_f)
        };
        if accepted {
            simplex[n] = (xc, fc);
            continue;
        }
        let best_x = simplex[0].0.clone();
        for vertex in simplex.iter_mut().skip(1) {
            let x = point(&best_x, &vertex.0, params.shrink);
            let f = problem.evaluate(&x)?;
            *vertex = (x, f);
        }
    }
}
