//! Campaign configuration: TOML file, command-line overrides, defaults.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::dynamics::{SolverSettings, SpectralSolver};
use crate::error::{Result, WecError};
use crate::hydrodyn::{AnalyticHydro, FrequencyGrid, HydroProvider, TableHydro};
use crate::objectives::{load_climate, Objective, WaveClimate, WecModel};
use crate::optimize::{
    Algorithm, CmaEsParams, DeParams, EaParams, HybridParams, NelderMeadParams, OptimiserConfig, PsoParams,
    SadeParams,
};

pub const DEFAULT_RADII: [f64; 4] = [8.0, 12.0, 16.0, 20.0];
pub const DEFAULT_ASPECTS: [f64; 3] = [0.4, 1.0, 1.5];

/// Source of hydrodynamic coefficients.
#[derive(Debug, Clone, PartialEq)]
pub enum HydroSource {
    Analytic,
    Table(PathBuf),
}

impl HydroSource {
    pub fn parse(s: &str) -> Self {
        if s.eq_ignore_ascii_case("analytic") {
            HydroSource::Analytic
        } else {
            HydroSource::Table(PathBuf::from(s))
        }
    }

    pub fn provider(&self) -> Result<Arc<dyn HydroProvider>> {
        Ok(match self {
            HydroSource::Analytic => Arc::new(AnalyticHydro),
            HydroSource::Table(path) => Arc::new(TableHydro::load(path)?),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    /// rad/s
    pub min: f64,
    /// rad/s
    pub max: f64,
    pub points: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        let g = FrequencyGrid::default();
        Self {
            min: g.min(),
            max: g.max(),
            points: g.len(),
        }
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct SweepSection {
    radii: Option<Vec<f64>>,
    aspects: Option<Vec<f64>>,
}

/// Contents of a configuration file. Every entry is optional.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    objective: Option<String>,
    algorithms: Option<Vec<String>>,
    budget: Option<usize>,
    repeats: Option<usize>,
    seed: Option<u64>,
    climate: Option<PathBuf>,
    hydro: Option<String>,
    out: Option<PathBuf>,
    jobs: Option<usize>,
    grid: Option<GridSpec>,
    sweep: Option<SweepSection>,
    solver: Option<SolverSettings>,
    nm: Option<NelderMeadParams>,
    ea: Option<EaParams>,
    pso: Option<PsoParams>,
    cmaes: Option<CmaEsParams>,
    de: Option<DeParams>,
    sade: Option<SadeParams>,
    hybrid: Option<HybridParams>,
}

impl FileConfig {
    /// Reads a TOML file; relative paths inside it are taken relative to
    /// the file's directory.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| WecError::io(path, e))?;
        let mut file: FileConfig = toml::from_str(&text).map_err(|e| {
            let line = e
                .span()
                .map(|s| text[..s.start].matches('\n').count() + 1)
                .unwrap_or(0);
            WecError::parse(path.display().to_string(), line, e.message().to_string())
        })?;
        let dir = path.parent().unwrap_or(Path::new(""));
        let resolve = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = dir.join(&*p);
            }
        };
        if let Some(p) = file.climate.as_mut() {
            resolve(p);
        }
        if let Some(p) = file.out.as_mut() {
            resolve(p);
        }
        if let Some(h) = file.hydro.as_mut() {
            if !h.eq_ignore_ascii_case("analytic") && Path::new(h.as_str()).is_relative() {
                *h = dir.join(h.as_str()).display().to_string();
            }
        }
        Ok(file)
    }
}

/// Command-line values that override the file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub objective: Option<String>,
    pub algorithms: Option<Vec<String>>,
    pub budget: Option<usize>,
    pub repeats: Option<usize>,
    pub seed: Option<u64>,
    pub climate: Option<PathBuf>,
    pub hydro: Option<String>,
    pub out: Option<PathBuf>,
    pub jobs: Option<usize>,
    pub grid_min: Option<f64>,
    pub grid_max: Option<f64>,
    pub grid_points: Option<usize>,
    pub radii: Option<Vec<f64>>,
    pub aspects: Option<Vec<f64>>,
}

/// Fully resolved settings of one CLI invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct CampaignConfig {
    pub objective: Objective,
    pub algorithms: Vec<Algorithm>,
    pub climate: Option<PathBuf>,
    pub hydro: HydroSource,
    pub grid: GridSpec,
    pub solver: SolverSettings,
    pub out: PathBuf,
    pub jobs: usize,
    pub radii: Vec<f64>,
    pub aspects: Vec<f64>,
    /// Budget, repeats, seed and hyperparameters; the algorithm field is
    /// set per run.
    pub optimiser: OptimiserConfig,
}

impl CampaignConfig {
    /// Merges flags over the file over the defaults.
    pub fn resolve(file: FileConfig, flags: Overrides) -> Result<Self> {
        let objective = match flags.objective.or(file.objective) {
            Some(s) => s.parse()?,
            None => Objective::Power,
        };
        let algorithms = match flags.algorithms.or(file.algorithms) {
            Some(tags) => tags
                .iter()
                .map(|t| t.trim().parse())
                .collect::<Result<Vec<Algorithm>>>()?,
            None => Algorithm::CAMPAIGN.to_vec(),
        };
        let defaults = OptimiserConfig::default();
        let optimiser = OptimiserConfig {
            algorithm: defaults.algorithm,
            budget: flags.budget.or(file.budget).unwrap_or(defaults.budget),
            repeats: flags.repeats.or(file.repeats).unwrap_or(defaults.repeats),
            seed: flags.seed.or(file.seed).unwrap_or(defaults.seed),
            nm: file.nm.unwrap_or_default(),
            ea: file.ea.unwrap_or_default(),
            pso: file.pso.unwrap_or_default(),
            cmaes: file.cmaes.unwrap_or_default(),
            de: file.de.unwrap_or_default(),
            sade: file.sade.unwrap_or_default(),
            hybrid: file.hybrid.unwrap_or_default(),
        };
        optimiser.validate()?;
        let file_grid = file.grid.unwrap_or_default();
        let grid = GridSpec {
            min: flags.grid_min.unwrap_or(file_grid.min),
            max: flags.grid_max.unwrap_or(file_grid.max),
            points: flags.grid_points.unwrap_or(file_grid.points),
        };
        let sweep = file.sweep.unwrap_or_default();
        let jobs = flags
            .jobs
            .or(file.jobs)
            .unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1));
        if jobs == 0 {
            return Err(WecError::Config("--jobs must be at least 1".into()));
        }
        let config = Self {
            objective,
            algorithms,
            climate: flags.climate.or(file.climate),
            hydro: HydroSource::parse(&flags.hydro.or(file.hydro).unwrap_or_else(|| "analytic".into())),
            grid,
            solver: file.solver.unwrap_or_default(),
            out: flags
                .out
                .or(file.out)
                .unwrap_or_else(|| PathBuf::from("wecopt-out")),
            jobs,
            radii: flags
                .radii
                .or(sweep.radii)
                .unwrap_or_else(|| DEFAULT_RADII.to_vec()),
            aspects: flags
                .aspects
                .or(sweep.aspects)
                .unwrap_or_else(|| DEFAULT_ASPECTS.to_vec()),
            optimiser,
        };
        config.frequency_grid()?;
        Ok(config)
    }

    pub fn frequency_grid(&self) -> Result<FrequencyGrid> {
        FrequencyGrid::uniform(self.grid.min, self.grid.max, self.grid.points)
    }

    pub fn climate(&self) -> Result<WaveClimate> {
        match &self.climate {
            Some(path) => load_climate(path),
            None => Err(WecError::Config(
                "no wave climate given (--climate or `climate` in the config file)".into(),
            )),
        }
    }

    /// Climate, hydrodynamics and solver ready to score designs.
    pub fn model(&self) -> Result<WecModel> {
        let solver = SpectralSolver::new(self.frequency_grid()?).with_settings(self.solver);
        Ok(WecModel::new(self.climate()?, self.hydro.provider()?).with_solver(solver))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let c = CampaignConfig::resolve(FileConfig::default(), Overrides::default()).unwrap();
        assert_eq!(c.objective, Objective::Power);
        assert_eq!(c.algorithms.len(), 6);
        assert_eq!(c.optimiser.budget, 5000);
        assert_eq!(c.optimiser.repeats, 10);
        assert_eq!(c.hydro, HydroSource::Analytic);
        assert_eq!(c.grid, GridSpec::default());
    }

    #[test]
    fn flags_beat_file_beat_defaults() {
        let file: FileConfig = toml::from_str(
            "objective = \"lcoe\"\nbudget = 300\nseed = 4\n[grid]\nmin = 0.2\nmax = 2.0\npoints = 40\n[pso]\nparticles = 12\n",
        )
        .unwrap();
        let flags = Overrides {
            budget: Some(50),
            grid_points: Some(20),
            ..Default::default()
        };
        let c = CampaignConfig::resolve(file, flags).unwrap();
        assert_eq!(c.objective, Objective::Lcoe);
        assert_eq!(c.optimiser.budget, 50);
        assert_eq!(c.optimiser.seed, 4);
        assert_eq!(c.optimiser.repeats, 10);
        assert_eq!(c.optimiser.pso.particles, 12);
        assert_eq!((c.grid.min, c.grid.points), (0.2, 20));
    }

    #[test]
    fn invalid_values_rejected() {
        let bad = |flags: Overrides| CampaignConfig::resolve(FileConfig::default(), flags).is_err();
        assert!(bad(Overrides {
            budget: Some(0),
            ..Default::default()
        }));
        assert!(bad(Overrides {
            algorithms: Some(vec!["ga".into()]),
            ..Default::default()
        }));
        assert!(bad(Overrides {
            objective: Some("energy".into()),
            ..Default::default()
        }));
        assert!(toml::from_str::<FileConfig>("budgett = 3").is_err());
    }
}
