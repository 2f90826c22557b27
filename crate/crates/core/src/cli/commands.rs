use std::fmt::Write as _;
use std::fs;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Result, WecError};
use crate::objectives::{DesignVector, EvaluationRecord, Objective, WecModel};
use crate::optimize::{optimise, sweep_grid, Algorithm, BoxStats, RunTrace, SURFACE_HEADER};

use super::{CampaignConfig, EXIT_OK, EXIT_PARTIAL};

fn write(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(|e| WecError::io(dir, e))?;
    }
    fs::write(path, contents).map_err(|e| WecError::io(path, e))
}

fn thread_pool(jobs: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| WecError::Config(format!("cannot start {jobs} worker threads: {e}")))
}

/// Human-readable report of one evaluation.
pub fn format_report(record: &EvaluationRecord, model: &WecModel) -> String {
    let d = &record.design;
    let mut s = String::new();
    let _ = writeln!(
        s,
        "design: a = {} m, H/a = {}, alpha_t = {} deg, alpha_ap = {} deg",
        d.radius, d.aspect_ratio, d.tether_inclination, d.attachment_angle
    );
    let _ = writeln!(
        s,
        "climate: {} ({} states, total probability {})",
        model.climate.label,
        model.climate.len(),
        model.climate.total_probability()
    );
    let _ = writeln!(s, "hydro: {}", model.hydro.label());
    let _ = writeln!(s, "P_AAP  = {:.3} W", record.p_aap);
    let _ = writeln!(s, "LCoE   = {:.9}", record.lcoe);
    let _ = writeln!(s, "m_b    = {:.3} kg", record.m_b);
    let _ = writeln!(s, "m_as   = {:.3} kg", record.m_as);
    let _ = writeln!(s, "F_peak = {:.3} N", record.peak_force);
    let _ = writeln!(
        s,
        "converged: {}",
        if record.converged {
            "all states"
        } else {
            "NO (failed states contribute zero power)"
        }
    );
    let _ = writeln!(
        s,
        "state,hs,tp,probability,k_pto,b_pto,power_w,peak_force_n,iterations,converged"
    );
    for (k, st) in record.states.iter().enumerate() {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{:.3},{:.3},{},{}",
            k,
            st.hs,
            st.tp,
            st.probability,
            d.k_pto[k],
            d.b_pto[k],
            st.power,
            st.peak_force,
            st.iterations,
            st.converged
        );
    }
    s
}

/// Scores the design in `design_path`, prints the report and saves the
/// record as a JSON line under `evaluations/`.
pub fn cmd_evaluate(design_path: &Path, config: &CampaignConfig) -> Result<u8> {
    let text = fs::read_to_string(design_path).map_err(|e| WecError::io(design_path, e))?;
    let design = DesignVector::parse(&text)?;
    let model = config.model()?;
    let record = model.evaluate(&design)?;
    print!("{}", format_report(&record, &model));
    let stem = design_path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "design".into());
    write(
        &config.out.join("evaluations").join(format!("{stem}.jsonl")),
        &(record.to_json_line() + "\n"),
    )?;
    Ok(EXIT_OK)
}

/// Per-run summary file.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunSummary {
    pub algorithm: Algorithm,
    pub objective: Objective,
    pub seed: u64,
    pub best_value: f64,
    /// Best design, physical units.
    pub best_design: DesignVector,
    /// Best design, search coordinates.
    pub search_vector: Vec<f64>,
    pub evaluations: usize,
    /// Seconds.
    pub wall_time: f64,
    pub record: EvaluationRecord,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FailedRun {
    pub seed: u64,
    pub error: String,
}

/// Distribution of the best values over the repeats of one algorithm.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgorithmSummary {
    pub algorithm: Algorithm,
    pub objective: Objective,
    pub budget: usize,
    pub seeds: Vec<u64>,
    pub best_values: Vec<f64>,
    pub stats: Option<BoxStats>,
    pub failed: Vec<FailedRun>,
}

fn run_label(objective: Objective, algorithm: Algorithm, seed: u64) -> String {
    format!("{}_{}_seed{}", objective.name(), algorithm.tag(), seed)
}

type RunOutcome = Result<(RunTrace, RunSummary)>;

fn single_run(
    model: &WecModel,
    config: &CampaignConfig,
    algorithm: Algorithm,
    seed: u64,
) -> Result<(RunTrace, RunSummary)> {
    let objective = config.objective;
    let space = model.space();
    let mut optimiser = config.optimiser.clone();
    optimiser.algorithm = algorithm;
    let f = |x: &[f64]| model.objective_at(objective, x);
    let trace = optimise(&f, &space.bounds(), objective.sense(), &optimiser, seed)?;
    let design = space.decode(&trace.best_design)?;
    let record = model.evaluate(&design)?;
    let summary = RunSummary {
        algorithm,
        objective,
        seed,
        best_value: trace.best_value,
        best_design: design,
        search_vector: trace.best_design.clone(),
        evaluations: trace.evaluations,
        wall_time: trace.wall_time,
        record,
    };
    Ok((trace, summary))
}

/// Runs the campaign, writing `traces/` and `summaries/`. Returns
/// [`EXIT_PARTIAL`] when any run failed.
pub fn cmd_optimise(config: &CampaignConfig) -> Result<u8> {
    if config.algorithms.contains(&Algorithm::HybridDeNm) {
        return Err(WecError::Config(
            "the hybrid scheme runs through `sweep`, not `optimise`".into(),
        ));
    }
    let model = config.model()?;
    let objective = config.objective;
    let base = config.optimiser.seed;
    let tasks: Vec<(Algorithm, u64)> = config
        .algorithms
        .iter()
        .flat_map(|&a| (0..config.optimiser.repeats as u64).map(move |r| (a, base.wrapping_add(r))))
        .collect();
    let pool = thread_pool(config.jobs)?;
    let results: Vec<(Algorithm, u64, RunOutcome)> = pool.install(|| {
        tasks
            .par_iter()
            .map(|&(algorithm, seed)| {
                let outcome = catch_unwind(AssertUnwindSafe(|| single_run(&model, config, algorithm, seed)))
                    .unwrap_or_else(|_| Err(WecError::Config("run panicked".into())));
                (algorithm, seed, outcome)
            })
            .collect()
    });

    let traces = config.out.join("traces");
    let summaries = config.out.join("summaries");
    let mut failures = 0;
    for &algorithm in &config.algorithms {
        let mut summary = AlgorithmSummary {
            algorithm,
            objective,
            budget: config.optimiser.budget,
            seeds: Vec::new(),
            best_values: Vec::new(),
            stats: None,
            failed: Vec::new(),
        };
        for (_, seed, outcome) in results.iter().filter(|r| r.0 == algorithm) {
            let label = run_label(objective, algorithm, *seed);
            match outcome {
                Ok((trace, run)) => {
                    write(&traces.join(format!("{label}.csv")), &trace.to_csv())?;
                    let json = serde_json::to_string_pretty(run).expect("summary serialises");
                    write(&summaries.join(format!("{label}.json")), &(json + "\n"))?;
                    summary.seeds.push(*seed);
                    summary.best_values.push(trace.best_value);
                }
                Err(e) => {
                    eprintln!("run {label} failed: {e}");
                    failures += 1;
                    summary.failed.push(FailedRun {
                        seed: *seed,
                        error: e.to_string(),
                    });
                }
            }
        }
        summary.stats = BoxStats::from_values(&summary.best_values);
        let json = serde_json::to_string_pretty(&summary).expect("summary serialises");
        write(
            &summaries.join(format!("{}_{}_summary.json", objective.name(), algorithm.tag())),
            &(json + "\n"),
        )?;
        match summary.stats {
            Some(b) => println!(
                "{:<6} runs {:>3}  min {:.6e}  q1 {:.6e}  median {:.6e}  q3 {:.6e}  max {:.6e}",
                algorithm.tag(),
                summary.best_values.len(),
                b.min,
                b.q1,
                b.median,
                b.q3,
                b.max
            ),
            None => println!("{:<6} no successful runs", algorithm.tag()),
        }
    }
    Ok(if failures > 0 { EXIT_PARTIAL } else { EXIT_OK })
}

/// Runs the radius/aspect sweep and writes `surfaces/<objective>_surface.csv`.
pub fn cmd_sweep(config: &CampaignConfig) -> Result<u8> {
    if config.radii.is_empty() || config.aspects.is_empty() {
        return Err(WecError::Config(
            "sweep needs at least one radius and one aspect ratio".into(),
        ));
    }
    let model = config.model()?;
    let mut optimiser = config.optimiser.clone();
    optimiser.algorithm = Algorithm::HybridDeNm;
    let pool = thread_pool(config.jobs)?;
    let rows = pool.install(|| {
        sweep_grid(
            &model,
            config.objective,
            &config.radii,
            &config.aspects,
            &optimiser,
        )
    });
    let mut csv = String::from(SURFACE_HEADER);
    csv.push('\n');
    let mut failures = 0;
    for row in &rows {
        csv.push_str(&row.to_csv_line());
        csv.push('\n');
        if let Some(e) = &row.error {
            eprintln!("node a = {}, H/a = {} failed: {e}", row.a, row.aspect);
            failures += 1;
        }
    }
    print!("{csv}");
    write(
        &config
            .out
            .join("surfaces")
            .join(format!("{}_surface.csv", config.objective.name())),
        &csv,
    )?;
    Ok(if failures > 0 { EXIT_PARTIAL } else { EXIT_OK })
}
