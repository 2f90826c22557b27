use super::*;
use rand::Rng;

fn sphere_fn(x: &[f64]) -> Result<f64> {
    Ok(sphere(x))
}

fn config(algorithm: Algorithm, budget: usize) -> OptimiserConfig {
    OptimiserConfig::new(algorithm).with_budget(budget)
}

#[test]
fn every_algorithm_spends_exactly_the_budget() {
    let bounds = benchmark_bounds(4);
    for algo in Algorithm::CAMPAIGN {
        for budget in [1, 7, 300] {
            let t = optimise(&sphere_fn, &bounds, Sense::Minimise, &config(algo, budget), 3).unwrap();
            assert_eq!(t.evaluations, budget, "{algo}");
            assert_eq!(t.best_so_far.len(), budget, "{algo}");
            assert!(t.is_monotone(), "{algo}");
            assert_eq!(t.out_of_bounds, 0, "{algo}");
        }
    }
}

#[test]
fn same_seed_same_trace() {
    let bounds = benchmark_bounds(5);
    for algo in Algorithm::CAMPAIGN {
        let a = optimise(&sphere_fn, &bounds, Sense::Minimise, &config(algo, 500), 42).unwrap();
        let b = optimise(&sphere_fn, &bounds, Sense::Minimise, &config(algo, 500), 42).unwrap();
        let c = optimise(&sphere_fn, &bounds, Sense::Minimise, &config(algo, 500), 43).unwrap();
        assert_eq!(a.to_csv(), b.to_csv(), "{algo}");
        assert_eq!(a.best_design, b.best_design, "{algo}");
        assert_ne!(a.to_csv(), c.to_csv(), "{algo}");
    }
}

#[test]
fn best_design_reproduces_best_value() {
    let bounds = benchmark_bounds(3);
    let neg = |x: &[f64]| Ok(-sphere(x));
    for algo in Algorithm::CAMPAIGN {
        let t = optimise(&neg, &bounds, Sense::Maximise, &config(algo, 400), 1).unwrap();
        assert_eq!(-sphere(&t.best_design), t.best_value, "{algo}");
        assert!(t.is_monotone());
    }
}

#[test]
fn constant_objective_keeps_first_value() {
    let bounds = benchmark_bounds(3);
    let flat = |_: &[f64]| Ok(2.0);
    let t = optimise(
        &flat,
        &bounds,
        Sense::Minimise,
        &config(Algorithm::NelderMead, 200),
        0,
    )
    .unwrap();
    assert_eq!(t.evaluations, 200);
    assert!(t.best_so_far.iter().all(|v| *v == 2.0));
}

#[test]
fn objective_errors_abort_the_run() {
    let bounds = benchmark_bounds(2);
    let bad = |_: &[f64]| -> Result<f64> { Err(WecError::Domain("boom".into())) };
    for algo in Algorithm::CAMPAIGN {
        assert!(optimise(&bad, &bounds, Sense::Minimise, &config(algo, 10), 0).is_err());
    }
}

#[test]
fn ea_mutation_rules() {
    assert_eq!(mutation_probability(1), 1.0);
    assert_eq!(mutation_probability(72), 1.0 / 72.0);
    let b = Bounds::new(vec![0.0, 3.0], vec![10.0, 8.0]).unwrap();
    assert_eq!(mutation_sigmas(&b, &EaParams::default()), vec![1.0, 0.5]);
}

#[test]
fn pso_inertia_decay() {
    let p = PsoParams::default();
    assert!((inertia_after(&p, 100) - 0.366_032_341_273_229_3).abs() < 1e-12);
}

#[test]
fn pso_started_at_optimum_never_worsens() {
    let bounds = benchmark_bounds(3);
    let opt: Vec<f64> = (0..3).map(shift).collect();
    let mut ev = Evaluator::new(&sphere_fn, bounds, Sense::Minimise, 500);
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let r = pso(&mut ev, &mut rng, &PsoParams::default(), Some(vec![opt; 25]));
    assert!(matches!(r, Err(Stop::Budget)));
    let t = ev.into_trace(Algorithm::Pso, 0, Instant::now());
    assert!(t.best_so_far.iter().all(|v| *v == 0.0));
}

#[test]
fn de_identical_population_is_frozen() {
    let bounds = benchmark_bounds(4);
    let point = vec![0.5, -1.0, 2.0, 3.0];
    let seen = std::sync::Mutex::new(Vec::new());
    let f = |x: &[f64]| {
        seen.lock().unwrap().push(x.to_vec());
        Ok(sphere(x))
    };
    let mut ev = Evaluator::new(&f, bounds, Sense::Minimise, 200);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let _ = differential_evolution(
        &mut ev,
        &mut rng,
        &DeParams::default(),
        Some(vec![point.clone(); 25]),
    );
    assert!(seen.into_inner().unwrap().iter().all(|x| *x == point));
}

#[test]
fn de_rejects_small_population() {
    let mut c = config(Algorithm::De, 100);
    c.de.population = 3;
    assert!(optimise(&sphere_fn, &benchmark_bounds(2), Sense::Minimise, &c, 0).is_err());
}

#[test]
fn cmaes_covariance_stays_positive_definite() {
    let bounds = benchmark_bounds(6);
    let rosen = |x: &[f64]| Ok(rosenbrock(x));
    let mut ev = Evaluator::new(&rosen, bounds, Sense::Minimise, 3000);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut generations = 0;
    let mut observe = |eig: &nalgebra::DVector<f64>| {
        generations += 1;
        assert!(eig.min() > 0.0, "{eig}");
    };
    let _ = cmaes_observed(&mut ev, &mut rng, &CmaEsParams::default(), Some(&mut observe));
    assert!(generations >= 3000 / 16 - 1);
}

#[test]
fn sade_equal_success_keeps_uniform_probabilities() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut m = StrategyMemory::new(50, 0.01);
    for _ in 0..500 {
        for _ in 0..100 {
            let k = m.choose(&mut rng);
            m.record(k, rng.random::<f64>() < 0.3, 0.5);
        }
        m.end_generation();
        for p in m.probabilities() {
            assert!((p - 0.25).abs() < 0.06, "{:?}", m.probabilities());
        }
    }
}

#[test]
fn hybrid_without_nm_is_de_on_the_pto_block() {
    // coordinates 0, 1 frozen; 2, 3 the "angles"; 4.. the "PTO" block
    let bounds = Bounds::new(vec![-5.0; 8], vec![5.0; 8]).unwrap();
    let mut start = bounds.midpoint();
    start[0] = 1.5;
    start[1] = -2.0;
    let blocks = HybridBlocks {
        de: (4..8).collect(),
        nm: vec![2, 3],
    };
    let mut c = config(Algorithm::HybridDeNm, 800);
    c.hybrid.nm_budget = 0;
    let hybrid = run_hybrid_de_nm(
        &sphere_fn,
        &bounds,
        Sense::Minimise,
        &blocks,
        start.clone(),
        &c,
        17,
    )
    .unwrap();

    let sub = |y: &[f64]| {
        let mut x = start.clone();
        x[4..].copy_from_slice(y);
        Ok(sphere(&x))
    };
    let de = optimise(
        &sub,
        &benchmark_bounds(4),
        Sense::Minimise,
        &config(Algorithm::De, 800),
        17,
    )
    .unwrap();
    assert_eq!(hybrid.best_so_far, de.best_so_far);
}

#[test]
fn hybrid_solves_separable_problem() {
    // angle block optimum 0.3 + PTO block optimum 0.0
    let bounds = Bounds::new(
        vec![5.0, 0.4, 10.0, 10.0, 3.0, 3.0],
        vec![20.0, 1.5, 80.0, 80.0, 8.0, 8.0],
    )
    .unwrap();
    let f = |x: &[f64]| {
        let g = 0.3 + ((x[2] - 30.0) / 70.0).powi(2) + ((x[3] - 62.0) / 70.0).powi(2);
        let h = (x[4] - 5.2).powi(2) + (x[5] - 4.1).powi(2);
        Ok(g + h)
    };
    let mut start = bounds.midpoint();
    start[0] = 8.0;
    start[1] = 1.0;
    let blocks = HybridBlocks {
        de: vec![4, 5],
        nm: vec![2, 3],
    };
    let t = run_hybrid_de_nm(
        &f,
        &bounds,
        Sense::Minimise,
        &blocks,
        start,
        &config(Algorithm::HybridDeNm, 5000),
        2,
    )
    .unwrap();
    assert!((t.best_value - 0.3).abs() < 1e-3, "{}", t.best_value);
    assert_eq!((t.best_design[0], t.best_design[1]), (8.0, 1.0));
    assert!(t.is_monotone());
    assert_eq!(t.evaluations, 5000);
}

#[test]
fn hybrid_not_allowed_without_partition() {
    assert!(optimise(
        &sphere_fn,
        &benchmark_bounds(2),
        Sense::Minimise,
        &config(Algorithm::HybridDeNm, 10),
        0
    )
    .is_err());
}

#[test]
fn repeats_use_consecutive_seeds() {
    let mut c = config(Algorithm::Pso, 100);
    c.repeats = 3;
    c.seed = 10;
    let runs = run_repeats(&sphere_fn, &benchmark_bounds(3), Sense::Minimise, &c);
    let seeds: Vec<u64> = runs.iter().map(|r| r.as_ref().unwrap().seed).collect();
    assert_eq!(seeds, vec![10, 11, 12]);
    let again = optimise(&sphere_fn, &benchmark_bounds(3), Sense::Minimise, &c, 11).unwrap();
    assert_eq!(runs[1].as_ref().unwrap().best_so_far, again.best_so_far);
}

#[test]
fn ten_thousand_proposals_stay_in_bounds() {
    // random objective values exercise every acceptance branch
    let bounds = Bounds::new(
        vec![5.0, 0.4, 10.0, 10.0, 3.0, 3.0, 3.0, 3.0],
        vec![20.0, 1.5, 80.0, 80.0, 8.0, 8.0, 8.0, 8.0],
    )
    .unwrap();
    let noisy = |x: &[f64]| {
        let h = x.iter().fold(0u64, |acc, v| acc.rotate_left(7) ^ v.to_bits());
        Ok((h % 10_007) as f64)
    };
    for algo in Algorithm::CAMPAIGN {
        let t = optimise(&noisy, &bounds, Sense::Minimise, &config(algo, 10_000), 5).unwrap();
        assert_eq!(t.out_of_bounds, 0, "{algo}");
        assert!(bounds.contains(&t.best_design));
    }
}
