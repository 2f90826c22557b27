//! CMA-ES with rank-one and rank-mu covariance updates and cumulative step
//! size adaptation, run in coordinates normalised to the unit box.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::Rng;
use rand_distr::StandardNormal;

use super::{CmaEsParams, Problem, Stop};

/// Smallest admissible `sigma * sqrt(max eigenvalue)` before a restart.
const MIN_SPREAD: f64 = 1e-16;
/// Largest admissible covariance condition number before a restart.
const MAX_CONDITION: f64 = 1e14;

/// Strategy constants of the canonical parameterisation.
#[derive(Debug, Clone)]
struct Constants {
    weights: Vec<f64>,
    mu_eff: f64,
    c_sigma: f64,
    d_sigma: f64,
    c_c: f64,
    c_1: f64,
    c_mu: f64,
    chi_n: f64,
}

impl Constants {
    fn new(n: usize, lambda: usize) -> Self {
        let nf = n as f64;
        let mu = lambda / 2;
        let raw: Vec<f64> = (1..=mu)
            .map(|i| (mu as f64 + 0.5).ln() - (i as f64).ln())
            .collect();
        let total: f64 = raw.iter().sum();
        let weights: Vec<f64> = raw.iter().map(|w| w / total).collect();
        let mu_eff = 1.0 / weights.iter().map(|w| w * w).sum::<f64>();
        let c_sigma = (mu_eff + 2.0) / (nf + mu_eff + 5.0);
        let d_sigma = 1.0 + 2.0 * (((mu_eff - 1.0) / (nf + 1.0)).sqrt() - 1.0).max(0.0) + c_sigma;
        let c_c = (4.0 + mu_eff / nf) / (nf + 4.0 + 2.0 * mu_eff / nf);
        let c_1 = 2.0 / ((nf + 1.3).powi(2) + mu_eff);
        let c_mu = (1.0 - c_1).min(2.0 * (mu_eff - 2.0 + 1.0 / mu_eff) / ((nf + 2.0).powi(2) + mu_eff));
        let chi_n = nf.sqrt() * (1.0 - 1.0 / (4.0 * nf) + 1.0 / (21.0 * nf * nf));
        Self {
            weights,
            mu_eff,
            c_sigma,
            d_sigma,
            c_c,
            c_1,
            c_mu,
            chi_n,
        }
    }
}

pub fn cmaes<R: Rng + ?Sized>(
    problem: &mut dyn Problem,
    rng: &mut R,
    params: &CmaEsParams,
) -> Result<(), Stop> {
    cmaes_observed(problem, rng, params, None)
}

/// Callback receiving the covariance eigenvalues after each generation.
pub type EigenObserver<'a> = &'a mut dyn FnMut(&DVector<f64>);

/// As [`cmaes`], calling `observer` with the covariance eigenvalues after
/// every generation.
pub fn cmaes_observed<R: Rng + ?Sized>(
    problem: &mut dyn Problem,
    rng: &mut R,
    params: &CmaEsParams,
    mut observer: Option<EigenObserver<'_>>,
) -> Result<(), Stop> {
    let bounds = problem.bounds().clone();
    let n = bounds.len();
    let lambda = params.population;
    let k = Constants::new(n, lambda);
    let to_real = |y: &DVector<f64>| -> Vec<f64> {
        (0..n)
            .map(|i| bounds.clamp_coord(i, bounds.lower()[i] + y[i] * bounds.range(i)))
            .collect()
    };

    let mut mean = DVector::from_element(n, 0.5);
    let mut sigma = params.sigma_fraction;
    let mut cov = DMatrix::<f64>::identity(n, n);
    let mut p_sigma = DVector::<f64>::zeros(n);
    let mut p_c = DVector::<f64>::zeros(n);
    let mut best = (mean.clone(), f64::INFINITY);
    let mut generation = 0usize;

    loop {
        let eig = SymmetricEigen::new(cov.clone());
        let (lo, hi) = (eig.eigenvalues.min(), eig.eigenvalues.max());
        if !(lo > 0.0
            && hi.is_finite()
            && hi / lo < MAX_CONDITION
            && sigma * hi.sqrt() > MIN_SPREAD
            && sigma.is_finite())
        {
            // degenerate search distribution: restart around the incumbent
            mean = best.0.clone();
            sigma = params.sigma_fraction;
            cov = DMatrix::identity(n, n);
            p_sigma.fill(0.0);
            p_c.fill(0.0);
            generation = 0;
            continue;
        }
        let basis = &eig.eigenvectors;
        let scale = eig.eigenvalues.map(f64::sqrt);
        let transform = basis * DMatrix::from_diagonal(&scale);

        let mut offspring: Vec<(DVector<f64>, f64)> = Vec::with_capacity(lambda);
        for _ in 0..lambda {
            let mut y = DVector::zeros(n);
            for attempt in 0..=params.max_resamples {
                let z = DVector::from_fn(n, |_, _| rng.sample::<f64, _>(StandardNormal));
                y = &transform * z;
                let inside = (0..n).all(|i| (0.0..=1.0).contains(&(mean[i] + sigma * y[i])));
                if inside || attempt == params.max_resamples {
                    break;
                }
            }
            // clamp and express the step actually taken
            let x = (&mean + sigma * &y).map(|v| v.clamp(0.0, 1.0));
            let f = problem.evaluate(&to_real(&x))?;
            if f < best.1 {
                best = (x.clone(), f);
            }
            offspring.push((x, f));
        }
        offspring.sort_by(|a, b| a.1.total_cmp(&b.1));

        let steps: Vec<DVector<f64>> = offspring[..k.weights.len()]
            .iter()
            .map(|(x, _)| (x - &mean) / sigma)
            .collect();
        let y_w = steps
            .iter()
            .zip(&k.weights)
            .fold(DVector::zeros(n), |acc, (y, w)| acc + y * *w);
        mean += sigma * &y_w;

        let inv_sqrt = basis * DMatrix::from_diagonal(&scale.map(|s| 1.0 / s)) * basis.transpose();
        p_sigma = (1.0 - k.c_sigma) * &p_sigma
            + (k.c_sigma * (2.0 - k.c_sigma) * k.mu_eff).sqrt() * (&inv_sqrt * &y_w);
        generation += 1;
        let norm_ps = p_sigma.norm();
        let h_sigma = norm_ps / (1.0 - (1.0 - k.c_sigma).powi(2 * generation as i32)).sqrt()
            < (1.4 + 2.0 / (n as f64 + 1.0)) * k.chi_n;
        let h = if h_sigma { 1.0 } else { 0.0 };
        p_c = (1.0 - k.c_c) * &p_c + h * (k.c_c * (2.0 - k.c_c) * k.mu_eff).sqrt() * &y_w;

        let rank_mu = steps
            .iter()
            .zip(&k.weights)
            .fold(DMatrix::zeros(n, n), |acc, (y, w)| acc + *w * y * y.transpose());
        let decay = 1.0 - k.c_1 - k.c_mu + (1.0 - h) * k.c_1 * k.c_c * (2.0 - k.c_c);
        cov = decay * &cov + k.c_1 * &p_c * p_c.transpose() + k.c_mu * rank_mu;
        cov = (&cov + cov.transpose()) * 0.5;
        sigma *= ((k.c_sigma / k.d_sigma) * (norm_ps / k.chi_n - 1.0)).exp();

        if let Some(observe) = observer.as_mut() {
            observe(&SymmetricEigen::new(cov.clone()).eigenvalues);
        }
    }
}
