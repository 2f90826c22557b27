use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamics::{tether_force_stats, SpectralSolver, WecGeometry};
use crate::error::{Result, WecError};
use crate::hydrodyn::{build_drag_model, DragModel, HydroCoefficients, HydroProvider};
use crate::optimize::Sense;

use super::{ClimateState, DesignSpace, DesignVector, Site, WaveClimate};

/// Anchoring mass of the reference installation, kg.
pub const REFERENCE_ANCHOR_MASS: f64 = 225e3;
/// Peak tether force of the reference installation, N.
pub const REFERENCE_PEAK_FORCE: f64 = 1.94e6;
pub const HOURS_PER_YEAR: f64 = 8760.0;

/// Anchoring mass scaled linearly from the reference installation.
pub fn anchoring_mass(peak_force: f64) -> f64 {
    REFERENCE_ANCHOR_MASS / REFERENCE_PEAK_FORCE * peak_force
}

/// `(annual energy in MWh / significant mass in kg)^(-1/2)`; `+inf` when no
/// power is produced.
pub fn lcoe_proxy(p_aap: f64, mass: f64) -> f64 {
    let energy_mwh = HOURS_PER_YEAR * p_aap * 1e-6;
    if energy_mwh > 0.0 {
        (energy_mwh / mass).powf(-0.5)
    } else {
        f64::INFINITY
    }
}

/// Outcome in one sea state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateResult {
    pub hs: f64,
    pub tp: f64,
    pub probability: f64,
    /// Mean absorbed power, W; zero when the solve failed.
    pub power: f64,
    /// Peak tether force, N.
    pub peak_force: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Both objectives of one design with their ingredients. Serialised as a
/// single JSON line; an infinite LCoE is written as `null`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationRecord {
    pub design: DesignVector,
    /// Annual average power, W.
    pub p_aap: f64,
    pub lcoe: f64,
    /// Buoy mass, kg.
    pub m_b: f64,
    /// Anchoring mass, kg.
    pub m_as: f64,
    /// Largest peak tether force over the climate, N.
    pub peak_force: f64,
    pub states: Vec<StateResult>,
    /// False when any sea state failed to converge.
    pub converged: bool,
}

impl EvaluationRecord {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("record serialises")
    }

    pub fn state_power(&self) -> Vec<f64> {
        self.states.iter().map(|s| s.power).collect()
    }

    pub fn value(&self, objective: Objective) -> f64 {
        match objective {
            Objective::Power => self.p_aap,
            Objective::Lcoe => self.lcoe,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Objective {
    /// Annual average power, maximised.
    Power,
    /// LCoE proxy, minimised.
    Lcoe,
}

impl Objective {
    pub fn sense(self) -> Sense {
        match self {
            Objective::Power => Sense::Maximise,
            Objective::Lcoe => Sense::Minimise,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Objective::Power => "power",
            Objective::Lcoe => "lcoe",
        }
    }
}

impl std::str::FromStr for Objective {
    type Err = WecError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "power" => Ok(Objective::Power),
            "lcoe" => Ok(Objective::Lcoe),
            _ => Err(WecError::Config(format!(
                "unknown objective `{s}` (power | lcoe)"
            ))),
        }
    }
}

/// Climate, hydrodynamics and solver needed to score designs.
#[derive(Clone)]
pub struct WecModel {
    pub climate: WaveClimate,
    pub hydro: Arc<dyn HydroProvider>,
    pub solver: SpectralSolver,
    pub site: Site,
}

impl std::fmt::Debug for WecModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("WecModel")
            .field("climate", &self.climate.label)
            .field("hydro", &self.hydro.label())
            .field("solver", &self.solver)
            .field("site", &self.site)
            .finish()
    }
}

impl WecModel {
    pub fn new(climate: WaveClimate, hydro: Arc<dyn HydroProvider>) -> Self {
        Self {
            climate,
            hydro,
            solver: SpectralSolver::default(),
            site: Site::default(),
        }
    }

    pub fn with_solver(mut self, solver: SpectralSolver) -> Self {
        self.solver = solver;
        self
    }

    pub fn with_site(mut self, site: Site) -> Self {
        self.site = site;
        self
    }

    pub fn space(&self) -> DesignSpace {
        DesignSpace::new(self.climate.len())
    }

    /// Scores a design, sea state by sea state.
    pub fn evaluate(&self, design: &DesignVector) -> Result<EvaluationRecord> {
        let (geom, hydro, drag) = self.prepare(design)?;
        let states = self
            .climate
            .states()
            .iter()
            .enumerate()
            .map(|(k, s)| self.solve_state(design, k, s, &geom, &hydro, &drag))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.assemble(design, &geom, states))
    }

    /// As [`WecModel::evaluate`] with the sea states solved concurrently.
    pub fn evaluate_parallel(&self, design: &DesignVector) -> Result<EvaluationRecord> {
        let (geom, hydro, drag) = self.prepare(design)?;
        let states = self
            .climate
            .states()
            .par_iter()
            .enumerate()
            .map(|(k, s)| self.solve_state(design, k, s, &geom, &hydro, &drag))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.assemble(design, &geom, states))
    }

    /// Objective value of a point in search coordinates.
    pub fn objective_at(&self, objective: Objective, x: &[f64]) -> Result<f64> {
        let design = self.space().decode(x)?;
        Ok(self.evaluate(&design)?.value(objective))
    }

    fn prepare(&self, design: &DesignVector) -> Result<(WecGeometry, HydroCoefficients, DragModel)> {
        if design.n_states() != self.climate.len() {
            return Err(WecError::Domain(format!(
                "design has {} PTO settings, climate has {} states",
                design.n_states(),
                self.climate.len()
            )));
        }
        design.validate()?;
        let geom = design.geometry(&self.site)?;
        let hydro = self.hydro.coefficients(&geom, &self.solver.grid)?;
        let drag = build_drag_model(&geom)?;
        Ok((geom, hydro, drag))
    }

    fn solve_state(
        &self,
        design: &DesignVector,
        k: usize,
        state: &ClimateState,
        geom: &WecGeometry,
        hydro: &HydroCoefficients,
        drag: &DragModel,
    ) -> Result<StateResult> {
        let pto = design.pto(k);
        let failed = |iterations| StateResult {
            hs: state.sea.hs,
            tp: state.sea.tp,
            probability: state.probability,
            power: 0.0,
            peak_force: 0.0,
            iterations,
            converged: false,
        };
        let response = match self.solver.solve(geom, hydro, drag, &pto, state.sea) {
            Ok(r) => r,
            // a singular impedance is a numerical failure of this state only
            Err(WecError::Singular { .. }) => return Ok(failed(0)),
            Err(e) => return Err(e),
        };
        let force = tether_force_stats(geom, &response, &pto)?;
        Ok(StateResult {
            power: if response.converged { response.power } else { 0.0 },
            peak_force: force.peak_force,
            iterations: response.iterations,
            converged: response.converged,
            ..failed(0)
        })
    }

    fn assemble(
        &self,
        design: &DesignVector,
        geom: &WecGeometry,
        states: Vec<StateResult>,
    ) -> EvaluationRecord {
        let p_aap = states.iter().map(|s| s.probability * s.power).sum::<f64>();
        let peak_force = states.iter().map(|s| s.peak_force).fold(0.0, f64::max);
        let m_b = geom.buoy_mass();
        let m_as = anchoring_mass(peak_force);
        EvaluationRecord {
            design: design.clone(),
            p_aap,
            lcoe: lcoe_proxy(p_aap, m_b + m_as),
            m_b,
            m_as,
            peak_force,
            converged: states.iter().all(|s| s.converged),
            states,
        }
    }
}
