use nalgebra::{Complex, Matrix6, Vector6};

use crate::dynamics::WecGeometry;
use crate::error::{Result, WecError};

use super::FrequencyGrid;

/// Relative tolerance on the symmetry of added mass and radiation damping.
pub(crate) const SYMMETRY_TOLERANCE: f64 = 1e-6;

/// Frequency-gridded added mass, radiation damping and excitation force
/// coefficients (per unit wave amplitude) for the six rigid-body modes.
#[derive(Debug, Clone, PartialEq)]
pub struct HydroCoefficients {
    grid: FrequencyGrid,
    added_mass: Vec<Matrix6<f64>>,
    radiation_damping: Vec<Matrix6<f64>>,
    excitation: Vec<Vector6<Complex<f64>>>,
}

impl HydroCoefficients {
    pub fn new(
        grid: FrequencyGrid,
        added_mass: Vec<Matrix6<f64>>,
        radiation_damping: Vec<Matrix6<f64>>,
        excitation: Vec<Vector6<Complex<f64>>>,
    ) -> Result<Self> {
        let n = grid.len();
        if added_mass.len() != n || radiation_damping.len() != n || excitation.len() != n {
            return Err(WecError::Domain(format!(
                "coefficient arrays must match the {n}-point grid"
            )));
        }
        for (i, ((a, b), f)) in added_mass
            .iter()
            .zip(&radiation_damping)
            .zip(&excitation)
            .enumerate()
        {
            check_node(i, grid.omegas()[i], a, b, f).map_err(WecError::Domain)?;
        }
        Ok(Self {
            grid,
            added_mass,
            radiation_damping,
            excitation,
        })
    }

    pub fn grid(&self) -> &FrequencyGrid {
        &self.grid
    }

    pub fn added_mass(&self) -> &[Matrix6<f64>] {
        &self.added_mass
    }

    pub fn radiation_damping(&self) -> &[Matrix6<f64>] {
        &self.radiation_damping
    }

    pub fn excitation(&self) -> &[Vector6<Complex<f64>>] {
        &self.excitation
    }

    /// Coefficients at `omega`, linearly interpolated between grid nodes and
    /// clamped to the end nodes outside the tabulated range.
    pub fn at(&self, omega: f64) -> (Matrix6<f64>, Matrix6<f64>, Vector6<Complex<f64>>) {
        let (i, t) = self.grid.locate(omega);
        let lerp_m = |m: &[Matrix6<f64>]| m[i] * (1.0 - t) + m[i + 1] * t;
        let f = self.excitation[i] * Complex::from(1.0 - t) + self.excitation[i + 1] * Complex::from(t);
        (lerp_m(&self.added_mass), lerp_m(&self.radiation_damping), f)
    }

    /// Interpolates onto another grid. Returns a clone when the grids agree.
    pub fn resample(&self, grid: &FrequencyGrid) -> Self {
        if grid == &self.grid {
            return self.clone();
        }
        let mut added_mass = Vec::with_capacity(grid.len());
        let mut radiation_damping = Vec::with_capacity(grid.len());
        let mut excitation = Vec::with_capacity(grid.len());
        for &w in grid.omegas() {
            let (a, b, f) = self.at(w);
            added_mass.push(a);
            radiation_damping.push(b);
            excitation.push(f);
        }
        Self {
            grid: grid.clone(),
            added_mass,
            radiation_damping,
            excitation,
        }
    }
}

/// Validates the per-frequency invariants, returning a message on failure.
pub(crate) fn check_node(
    index: usize,
    omega: f64,
    a: &Matrix6<f64>,
    b: &Matrix6<f64>,
    f: &Vector6<Complex<f64>>,
) -> std::result::Result<(), String> {
    let finite = a.iter().chain(b.iter()).all(|v| v.is_finite())
        && f.iter().all(|c| c.re.is_finite() && c.im.is_finite());
    if !finite {
        return Err(format!(
            "non-finite coefficient at node {index} (omega = {omega})"
        ));
    }
    if !is_symmetric(a) {
        return Err(format!("added mass not symmetric at omega = {omega}"));
    }
    if !is_symmetric(b) {
        return Err(format!("radiation damping not symmetric at omega = {omega}"));
    }
    if let Some(k) = (0..6).find(|&k| b[(k, k)] < 0.0) {
        return Err(format!(
            "negative radiation damping diagonal entry {k} at omega = {omega}"
        ));
    }
    Ok(())
}

fn is_symmetric(m: &Matrix6<f64>) -> bool {
    let scale = m.amax();
    if scale == 0.0 {
        return true;
    }
    (0..6).all(|i| (0..i).all(|j| (m[(i, j)] - m[(j, i)]).abs() <= SYMMETRY_TOLERANCE * scale))
}

/// Source of hydrodynamic coefficients for a buoy geometry.
pub trait HydroProvider: Send + Sync {
    /// Coefficients for `geom` sampled on `grid`.
    fn coefficients(&self, geom: &WecGeometry, grid: &FrequencyGrid) -> Result<HydroCoefficients>;

    /// Short label used in logs and output files.
    fn label(&self) -> String;
}
