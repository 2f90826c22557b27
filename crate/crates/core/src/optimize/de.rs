//! Differential evolution (DE/rand/1/bin) and its self-adaptive variant
//! with a four-strategy pool.

use std::collections::VecDeque;

use rand::seq::index::sample;
use rand::Rng;
use rand_distr::{Distribution, Normal};

use super::{Bounds, DeParams, Problem, SadeParams, Stop};

/// Binomial crossover: each coordinate comes from the mutant with
/// probability `cr`, and coordinate `forced` always does.
pub fn binomial_crossover<R: Rng + ?Sized>(
    target: &[f64],
    mutant: &[f64],
    cr: f64,
    forced: usize,
    rng: &mut R,
) -> Vec<f64> {
    target
        .iter()
        .zip(mutant)
        .enumerate()
        .map(|(j, (t, m))| {
            if j == forced || rng.random::<f64>() < cr {
                *m
            } else {
                *t
            }
        })
        .collect()
}

/// `count` distinct population indices, none equal to `exclude`.
fn distinct<R: Rng + ?Sized>(rng: &mut R, pop: usize, exclude: usize, count: usize) -> Vec<usize> {
    sample(rng, pop - 1, count)
        .into_iter()
        .map(|i| if i >= exclude { i + 1 } else { i })
        .collect()
}

fn evaluate_population(
    problem: &mut dyn Problem,
    bounds: &Bounds,
    pop: &mut [Vec<f64>],
) -> Result<Vec<f64>, Stop> {
    pop.iter_mut()
        .map(|x| {
            bounds.clamp(x);
            problem.evaluate(x)
        })
        .collect()
}

/// DE/rand/1/bin with greedy one-to-one selection. `initial` replaces the
/// random initial population.
pub fn differential_evolution<R: Rng + ?Sized>(
    problem: &mut dyn Problem,
    rng: &mut R,
    params: &DeParams,
    initial: Option<Vec<Vec<f64>>>,
) -> Result<(), Stop> {
    let bounds = problem.bounds().clone();
    let n = bounds.len();
    let mut pop = initial.unwrap_or_else(|| (0..params.population).map(|_| bounds.sample(rng)).collect());
    let np = pop.len();
    if np < 4 {
        return Err(Stop::Failed(crate::WecError::Config(format!(
            "DE population {np} < 4"
        ))));
    }
    let mut fit = evaluate_population(problem, &bounds, &mut pop)?;
    loop {
        let mut next = pop.clone();
        for i in 0..np {
            let r = distinct(rng, np, i, 3);
            let mutant: Vec<f64> = (0..n)
                .map(|j| pop[r[0]][j] + params.weight * (pop[r[1]][j] - pop[r[2]][j]))
                .collect();
            let forced = rng.random_range(0..n);
            let mut trial = binomial_crossover(&pop[i], &mutant, params.crossover, forced, rng);
            bounds.clamp(&mut trial);
            let f = problem.evaluate(&trial)?;
            if f <= fit[i] {
                next[i] = trial;
                fit[i] = f;
            }
        }
        pop = next;
    }
}

/// Offspring-generation strategies of the SaDE pool.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Rand1Bin,
    RandToBest2Bin,
    Rand2Bin,
    CurrentToRand1,
}

impl Strategy {
    pub const POOL: [Strategy; 4] = [
        Strategy::Rand1Bin,
        Strategy::RandToBest2Bin,
        Strategy::Rand2Bin,
        Strategy::CurrentToRand1,
    ];
}

/// Success/failure and crossover-rate memory over the learning period.
#[derive(Debug, Clone)]
pub struct StrategyMemory {
    learning_period: usize,
    floor: f64,
    /// Per generation: (successes, failures) for every strategy.
    counts: VecDeque<[(usize, usize); 4]>,
    /// Per generation: successful crossover rates for every strategy.
    crs: VecDeque<[Vec<f64>; 4]>,
    current: [(usize, usize); 4],
    current_crs: [Vec<f64>; 4],
    probabilities: [f64; 4],
    cr_means: [f64; 4],
}

impl StrategyMemory {
    pub fn new(learning_period: usize, floor: f64) -> Self {
        Self {
            learning_period,
            floor,
            counts: VecDeque::new(),
            crs: VecDeque::new(),
            current: [(0, 0); 4],
            current_crs: Default::default(),
            probabilities: [0.25; 4],
            cr_means: [0.5; 4],
        }
    }

    pub fn probabilities(&self) -> [f64; 4] {
        self.probabilities
    }

    pub fn cr_means(&self) -> [f64; 4] {
        self.cr_means
    }

    pub fn record(&mut self, strategy: usize, success: bool, cr: f64) {
        if success {
            self.current[strategy].0 += 1;
            self.current_crs[strategy].push(cr);
        } else {
            self.current[strategy].1 += 1;
        }
    }

    /// Closes a generation. Once the memory spans the learning period the
    /// selection probabilities become `eps + (1 - 4 eps) S_k / sum S`, with
    /// `S_k` the success rate of strategy `k` over the memory, and the
    /// crossover-rate means the medians of the remembered successful rates.
    pub fn end_generation(&mut self) {
        self.counts.push_back(std::mem::take(&mut self.current));
        self.crs.push_back(std::mem::take(&mut self.current_crs));
        if self.counts.len() > self.learning_period {
            self.counts.pop_front();
            self.crs.pop_front();
        }
        if self.counts.len() < self.learning_period {
            return;
        }
        let mut rates = [0.0; 4];
        for (k, rate) in rates.iter_mut().enumerate() {
            let (s, f) = self
                .counts
                .iter()
                .fold((0, 0), |acc, g| (acc.0 + g[k].0, acc.1 + g[k].1));
            if s + f > 0 {
                *rate = s as f64 / (s + f) as f64;
            }
        }
        let total: f64 = rates.iter().sum();
        if total > 0.0 {
            for (p, rate) in self.probabilities.iter_mut().zip(rates) {
                *p = self.floor + (1.0 - 4.0 * self.floor) * rate / total;
            }
        }
        for k in 0..4 {
            let mut all: Vec<f64> = self.crs.iter().flat_map(|g| g[k].iter().copied()).collect();
            if !all.is_empty() {
                all.sort_by(f64::total_cmp);
                let m = all.len();
                self.cr_means[k] = if m % 2 == 1 {
                    all[m / 2]
                } else {
                    0.5 * (all[m / 2 - 1] + all[m / 2])
                };
            }
        }
    }

    /// Roulette-wheel choice of a strategy index.
    pub fn choose<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let u: f64 = rng.random();
        let mut acc = 0.0;
        for (k, p) in self.probabilities.iter().enumerate() {
            acc += p;
            if u < acc {
                return k;
            }
        }
        3
    }
}

/// Self-adaptive DE over the four-strategy pool.
pub fn sade<R: Rng + ?Sized>(
    problem: &mut dyn Problem,
    rng: &mut R,
    params: &SadeParams,
) -> Result<(), Stop> {
    let bounds = problem.bounds().clone();
    let n = bounds.len();
    let np = params.population;
    if np < 6 {
        return Err(Stop::Failed(crate::WecError::Config(format!(
            "SaDE population {np} < 6"
        ))));
    }
    let weight_dist = Normal::new(params.weight_mean, params.weight_std).expect("valid weight distribution");
    let mut pop: Vec<Vec<f64>> = (0..np).map(|_| bounds.sample(rng)).collect();
    let mut fit = evaluate_population(problem, &bounds, &mut pop)?;
    let mut memory = StrategyMemory::new(params.learning_period, params.min_probability);
    loop {
        let best = (0..np).min_by(|&a, &b| fit[a].total_cmp(&fit[b])).unwrap_or(0);
        let mut next = pop.clone();
        for i in 0..np {
            let k = memory.choose(rng);
            let f = loop {
                let f = weight_dist.sample(rng);
                if f > 0.0 && f <= 1.0 {
                    break f;
                }
            };
            let cr = (memory.cr_means()[k]
                + params.crossover_std * rng.sample::<f64, _>(rand_distr::StandardNormal))
            .clamp(0.0, 1.0);
            let r = distinct(rng, np, i, 5);
            let x = &pop;
            let strategy = Strategy::POOL[k];
            let mut trial: Vec<f64> = match strategy {
                Strategy::Rand1Bin => (0..n)
                    .map(|j| x[r[0]][j] + f * (x[r[1]][j] - x[r[2]][j]))
                    .collect(),
                Strategy::RandToBest2Bin => (0..n)
                    .map(|j| {
                        x[i][j]
                            + f * (x[best][j] - x[i][j])
                            + f * (x[r[0]][j] - x[r[1]][j])
                            + f * (x[r[2]][j] - x[r[3]][j])
                    })
                    .collect(),
                Strategy::Rand2Bin => (0..n)
                    .map(|j| x[r[0]][j] + f * (x[r[1]][j] - x[r[2]][j]) + f * (x[r[3]][j] - x[r[4]][j]))
                    .collect(),
                Strategy::CurrentToRand1 => {
                    let kk: f64 = rng.random();
                    (0..n)
                        .map(|j| x[i][j] + kk * (x[r[0]][j] - x[i][j]) + f * (x[r[1]][j] - x[r[2]][j]))
                        .collect()
                }
            };
            if strategy != Strategy::CurrentToRand1 {
                let forced = rng.random_range(0..n);
                trial = binomial_crossover(&pop[i], &trial, cr, forced, rng);
            }
            bounds.clamp(&mut trial);
            let value = problem.evaluate(&trial)?;
            let success = value <= fit[i];
            memory.record(k, success, cr);
            if success {
                next[i] = trial;
                fit[i] = value;
            }
        }
        pop = next;
        memory.end_generation();
    }
}
