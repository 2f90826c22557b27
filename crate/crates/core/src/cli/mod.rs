//! The `wecopt` command-line front end.
//!
//! Exit codes: 0 on success, 1 when some optimiser runs or sweep nodes
//! failed (the others still complete and are written), 2 on invalid input.

mod commands;
mod config;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use commands::{
    cmd_evaluate, cmd_optimise, cmd_sweep, format_report, AlgorithmSummary, FailedRun, RunSummary,
};
pub use config::{
    CampaignConfig, FileConfig, GridSpec, HydroSource, Overrides, DEFAULT_ASPECTS, DEFAULT_RADII,
};

pub const EXIT_OK: u8 = 0;
pub const EXIT_PARTIAL: u8 = 1;
pub const EXIT_INVALID: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "wecopt",
    version,
    about = "Spectral-domain design optimisation of a submerged three-tether wave energy converter"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Scores one design vector file on the climate.
    Evaluate {
        /// Whitespace-separated `a H/a alpha_t alpha_ap k_1..k_N b_1..b_N`.
        design: PathBuf,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Runs every selected optimiser `repeats` times.
    #[command(alias = "optimize")]
    Optimise {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        search: SearchArgs,
        /// Comma-separated algorithm tags: nm, ea, pso, cmaes, de, sade.
        #[arg(long, value_delimiter = ',')]
        algo: Option<Vec<String>>,
        #[arg(long)]
        repeats: Option<usize>,
    },
    /// Hybrid DE-NM once per (radius, aspect ratio) node.
    Sweep {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        search: SearchArgs,
        /// Comma-separated radii, m.
        #[arg(long, value_delimiter = ',')]
        radii: Option<Vec<f64>>,
        /// Comma-separated aspect ratios H/a.
        #[arg(long, value_delimiter = ',')]
        aspects: Option<Vec<f64>>,
    },
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// TOML configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Climate CSV with header `hs,tp,probability`.
    #[arg(long)]
    climate: Option<PathBuf>,
    /// `analytic` or the path of a hydrodynamic table.
    #[arg(long)]
    hydro: Option<String>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads.
    #[arg(long)]
    jobs: Option<usize>,
    /// Lowest grid frequency, rad/s.
    #[arg(long)]
    grid_min: Option<f64>,
    /// Highest grid frequency, rad/s.
    #[arg(long)]
    grid_max: Option<f64>,
    #[arg(long)]
    grid_points: Option<usize>,
}

#[derive(Debug, Args)]
struct SearchArgs {
    /// `power` or `lcoe`.
    #[arg(long)]
    objective: Option<String>,
    /// Objective evaluations per run (per node for sweeps).
    #[arg(long)]
    budget: Option<usize>,
    /// Base seed; run r uses seed + r.
    #[arg(long)]
    seed: Option<u64>,
}

fn overrides(common: CommonArgs, search: Option<SearchArgs>) -> (Option<PathBuf>, Overrides) {
    let mut o = Overrides {
        climate: common.climate,
        hydro: common.hydro,
        out: common.out,
        jobs: common.jobs,
        grid_min: common.grid_min,
        grid_max: common.grid_max,
        grid_points: common.grid_points,
        ..Default::default()
    };
    if let Some(s) = search {
        o.objective = s.objective;
        o.budget = s.budget;
        o.seed = s.seed;
    }
    (common.config, o)
}

fn resolve(config: Option<PathBuf>, flags: Overrides) -> crate::Result<CampaignConfig> {
    let file = match config {
        Some(path) => FileConfig::load(&path)?,
        None => FileConfig::default(),
    };
    CampaignConfig::resolve(file, flags)
}

/// Parses `args` (including the program name), runs the command and
/// returns the process exit code. Reports go to stdout, diagnostics to
/// stderr.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
        }
    };
    let result = match cli.command {
        Command::Evaluate { design, common } => {
            let (file, flags) = overrides(common, None);
            resolve(file, flags).and_then(|c| cmd_evaluate(&design, &c))
        }
        Command::Optimise {
            common,
            search,
            algo,
            repeats,
        } => {
            let (file, mut flags) = overrides(common, Some(search));
            flags.algorithms = algo;
            flags.repeats = repeats;
            resolve(file, flags).and_then(|c| cmd_optimise(&c))
        }
        Command::Sweep {
            common,
            search,
            radii,
            aspects,
        } => {
            let (file, mut flags) = overrides(common, Some(search));
            flags.radii = radii;
            flags.aspects = aspects;
            resolve(file, flags).and_then(|c| cmd_sweep(&c))
        }
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INVALID
        }
    }
}
