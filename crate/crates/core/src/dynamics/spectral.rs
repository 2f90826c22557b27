//! Spectral-domain response by statistical linearisation of quadratic drag.
//!
//! Each iteration solves the linear frequency-domain system
//! `[-w^2 (M + A) + i w (B + B_pto + B_eq) + K_pto] x = F_exc` at every grid
//! node, forms the response PSD `S_x = H S_F H^H` with
//! `S_F = S_eta diag(|f_exc,i|^2)`, integrates the velocity variances and
//! updates the equivalent damping `B_eq,i = 1/2 rho Cd_i A_i sqrt(8/pi) sigma_i`.
//! The loop stops once `max |B_eq[n] - B_eq[n-1]| < tolerance`.

use std::f64::consts::PI;

use nalgebra::{Complex, Matrix6, SMatrix};
use serde::{Deserialize, Serialize};

use crate::error::{Result, WecError};
use crate::hydrodyn::{pm_spectrum, DragModel, FrequencyGrid, HydroCoefficients, SeaState};

use super::{inverse_jacobian, mass_matrix, pto_6dof_matrices, PtoSetting, WecGeometry, TETHER_COUNT};

type CMatrix6 = Matrix6<Complex<f64>>;

/// How the next equivalent-damping iterate is proposed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum FixedPointUpdate {
    /// `B_eq[n+1] = G(B_eq[n])`.
    Picard,
    /// Component-wise secant step on the residual `G(B) - B`, falling back
    /// to a Picard step whenever the secant estimate is unusable.
    #[default]
    Secant,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverSettings {
    /// Convergence threshold on the equivalent damping, in its SI units.
    pub tolerance: f64,
    pub max_iterations: usize,
    pub update: FixedPointUpdate,
}

impl Default for SolverSettings {
    fn default() -> Self {
        Self {
            tolerance: 0.01,
            max_iterations: 50,
            update: FixedPointUpdate::default(),
        }
    }
}

/// Converged (or flagged) spectral-domain response in one sea state.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralResponse {
    /// Diagonal of the equivalent damping used for the reported response.
    pub b_eq: [f64; 6],
    pub sigma_x: [f64; 6],
    pub sigma_xdot: [f64; 6],
    /// Tether excursion standard deviations, m.
    pub sigma_q: [f64; TETHER_COUNT],
    /// Tether rate standard deviations, m/s.
    pub sigma_qdot: [f64; TETHER_COUNT],
    /// Mean absorbed power, W.
    pub power: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Response PSD matrix at every grid node.
    pub response_psd: Vec<CMatrix6>,
}

/// Statistical-linearisation solver on a fixed frequency grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralSolver {
    pub grid: FrequencyGrid,
    pub settings: SolverSettings,
}

impl Default for SpectralSolver {
    fn default() -> Self {
        Self::new(FrequencyGrid::default())
    }
}

impl SpectralSolver {
    pub fn new(grid: FrequencyGrid) -> Self {
        Self {
            grid,
            settings: SolverSettings::default(),
        }
    }

    pub fn with_settings(mut self, settings: SolverSettings) -> Self {
        self.settings = settings;
        self
    }

    /// Solves one sea state. Failure to converge within the iteration cap is
    /// reported through [`SpectralResponse::converged`], not as an error.
    pub fn solve(
        &self,
        geom: &WecGeometry,
        hydro: &HydroCoefficients,
        drag: &DragModel,
        pto: &PtoSetting,
        sea: SeaState,
    ) -> Result<SpectralResponse> {
        geom.validate()?;
        sea.validate()?;
        let settings = &self.settings;
        if !(settings.tolerance > 0.0) || settings.max_iterations == 0 {
            return Err(WecError::Config(
                "solver tolerance must be positive and the iteration cap non-zero".into(),
            ));
        }
        let jinv = inverse_jacobian(geom)?;
        let mass = mass_matrix(geom)?;
        let (k_pto, b_pto) = pto_6dof_matrices(pto, &jinv);
        let hydro = hydro.resample(&self.grid);
        let omegas = self.grid.omegas();

        // frequency-independent parts of the impedance and the force PSD
        let mut base = Vec::with_capacity(omegas.len());
        let mut force_psd = Vec::with_capacity(omegas.len());
        for (i, &w) in omegas.iter().enumerate() {
            let a = hydro.added_mass()[i];
            let b = hydro.radiation_damping()[i];
            let re = k_pto - (mass + a) * (w * w);
            let im = (b + b_pto) * w;
            base.push(CMatrix6::from_fn(|r, c| Complex::new(re[(r, c)], im[(r, c)])));
            let s_eta = pm_spectrum(sea, w)?;
            let f = hydro.excitation()[i];
            force_psd.push(std::array::from_fn::<f64, 6, _>(|m| s_eta * f[m].norm_sqr()));
        }

        let factors = drag.quadratic_factors(geom.water_density);
        let linearisation = (8.0 / PI).sqrt();
        let equivalent = |sigma2: &[f64; 6]| -> [f64; 6] {
            std::array::from_fn(|i| factors[i] * linearisation * sigma2[i].max(0.0).sqrt())
        };

        let mut b_eq = [0.0; 6];
        let mut previous: Option<([f64; 6], [f64; 6])> = None;
        let mut transfer = Vec::with_capacity(omegas.len());
        let mut iterations = 0;
        let mut converged = false;
        while iterations < settings.max_iterations {
            iterations += 1;
            transfer.clear();
            for (i, &w) in omegas.iter().enumerate() {
                let mut z = base[i];
                for d in 0..6 {
                    z[(d, d)].im += w * b_eq[d];
                }
                let h = z
                    .try_inverse()
                    .filter(|h| h.iter().all(|c| c.re.is_finite() && c.im.is_finite()));
                transfer.push(h.ok_or(WecError::Singular { omega: w })?);
            }
            let velocity_var = self.velocity_variances(&transfer, &force_psd);
            let target = equivalent(&velocity_var);
            let residual: [f64; 6] = std::array::from_fn(|i| target[i] - b_eq[i]);
            if residual.iter().all(|r| r.abs() < settings.tolerance) {
                converged = true;
                break;
            }
            let next = match (settings.update, previous) {
                (FixedPointUpdate::Secant, Some((x_prev, r_prev))) => {
                    std::array::from_fn(|i| secant_step(b_eq[i], residual[i], x_prev[i], r_prev[i]))
                }
                _ => target,
            };
            previous = Some((b_eq, residual));
            b_eq = next;
        }

        Ok(self.assemble(&jinv, pto, &transfer, &force_psd, b_eq, iterations, converged))
    }

    fn velocity_variances(&self, transfer: &[CMatrix6], force_psd: &[[f64; 6]]) -> [f64; 6] {
        let omegas = self.grid.omegas();
        let mut out = [0.0; 6];
        let mut integrand = vec![0.0; omegas.len()];
        for (d, slot) in out.iter_mut().enumerate() {
            for (i, &w) in omegas.iter().enumerate() {
                let h = &transfer[i];
                let sxx: f64 = (0..6).map(|m| h[(d, m)].norm_sqr() * force_psd[i][m]).sum();
                integrand[i] = w * w * sxx;
            }
            *slot = self.grid.integrate(&integrand);
        }
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn assemble(
        &self,
        jinv: &SMatrix<f64, 3, 6>,
        pto: &PtoSetting,
        transfer: &[CMatrix6],
        force_psd: &[[f64; 6]],
        b_eq: [f64; 6],
        iterations: usize,
        converged: bool,
    ) -> SpectralResponse {
        let omegas = self.grid.omegas();
        let n = omegas.len();
        let response_psd: Vec<CMatrix6> = transfer
            .iter()
            .zip(force_psd)
            .map(|(h, sf)| {
                let mut scaled = *h;
                for (m, s) in sf.iter().enumerate() {
                    scaled.column_mut(m).scale_mut(*s);
                }
                let s = scaled * h.adjoint();
                // Hermitian by construction; remove rounding asymmetry
                (s + s.adjoint()) * Complex::from(0.5)
            })
            .collect();

        let jc = jinv.map(Complex::from);
        let mut x_psd = vec![[0.0; 6]; n];
        let mut q_psd = vec![[0.0; TETHER_COUNT]; n];
        for (i, s) in response_psd.iter().enumerate() {
            x_psd[i] = std::array::from_fn(|d| s[(d, d)].re);
            let sq = jc * s * jc.transpose();
            q_psd[i] = std::array::from_fn(|k| sq[(k, k)].re);
        }
        let moment = |series: &dyn Fn(usize) -> f64, order: i32| -> f64 {
            let v: Vec<f64> = (0..n).map(|i| omegas[i].powi(order) * series(i)).collect();
            self.grid.integrate(&v).max(0.0)
        };
        let sigma_x = std::array::from_fn(|d| moment(&|i| x_psd[i][d], 0).sqrt());
        let sigma_xdot = std::array::from_fn(|d| moment(&|i| x_psd[i][d], 2).sqrt());
        let qdot_var: [f64; TETHER_COUNT] = std::array::from_fn(|k| moment(&|i| q_psd[i][k], 2));
        let sigma_q = std::array::from_fn(|k| moment(&|i| q_psd[i][k], 0).sqrt());
        let sigma_qdot = qdot_var.map(f64::sqrt);
        let power = pto.b_pto * qdot_var.iter().sum::<f64>();

        SpectralResponse {
            b_eq,
            sigma_x,
            sigma_xdot,
            sigma_q,
            sigma_qdot,
            power,
            iterations,
            converged,
            response_psd,
        }
    }
}

/// Secant root step for `r(x) = G(x) - x` from two iterates, kept
/// non-negative. Falls back to the Picard step `x + r` when the secant slope
/// is degenerate or implies a non-contracting map.
fn secant_step(x: f64, r: f64, x_prev: f64, r_prev: f64) -> f64 {
    let picard = (x + r).max(0.0);
    let dx = x - x_prev;
    let dr = r - r_prev;
    if dx == 0.0 || dr == 0.0 {
        return picard;
    }
    // slope of G is 1 + dr/dx; only trust secant when G is decreasing or
    // mildly increasing, as for drag damping
    let slope = dr / dx;
    if !slope.is_finite() || slope >= -0.05 {
        return picard;
    }
    (x - r / slope).max(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hydrodyn::{build_drag_model, AnalyticHydro, HydroProvider};

    fn setup(a: f64, h: f64, t: f64, ap: f64) -> (WecGeometry, HydroCoefficients, DragModel) {
        let g = WecGeometry::new(a, h, t, ap).unwrap();
        let hydro = AnalyticHydro.coefficients(&g, &FrequencyGrid::default()).unwrap();
        let drag = build_drag_model(&g).unwrap();
        (g, hydro, drag)
    }

    #[test]
    fn zero_drag_converges_immediately() {
        let (g, hydro, _) = setup(5.5, 5.5, 45.0, 45.0);
        let r = SpectralSolver::default()
            .solve(
                &g,
                &hydro,
                &DragModel::zero(),
                &PtoSetting::new(2e5, 1.5e5).unwrap(),
                SeaState::new(3.0, 8.0).unwrap(),
            )
            .unwrap();
        assert_eq!(r.iterations, 1);
        assert!(r.converged);
        assert_eq!(r.b_eq, [0.0; 6]);
        assert!(r.power > 0.0);
    }

    #[test]
    fn reference_design_converges_with_less_power() {
        let (g, hydro, drag) = setup(5.5, 5.5, 45.0, 45.0);
        let solver = SpectralSolver::default();
        let pto = PtoSetting::new(2e5, 1.5e5).unwrap();
        let sea = SeaState::new(3.0, 8.0).unwrap();
        let lin = solver.solve(&g, &hydro, &DragModel::zero(), &pto, sea).unwrap();
        let r = solver.solve(&g, &hydro, &drag, &pto, sea).unwrap();
        assert!(r.converged, "{} iterations", r.iterations);
        assert!(r.power < lin.power);
        assert!(r.b_eq.iter().all(|b| *b >= 0.0));
    }

    #[test]
    fn final_damping_is_a_fixed_point() {
        let (g, hydro, drag) = setup(9.0, 9.0, 30.0, 55.0);
        let solver = SpectralSolver::default();
        let r = solver
            .solve(
                &g,
                &hydro,
                &drag,
                &PtoSetting::new(1e6, 4e5).unwrap(),
                SeaState::new(2.5, 9.0).unwrap(),
            )
            .unwrap();
        assert!(r.converged);
        let f = drag.quadratic_factors(g.water_density);
        for (d, factor) in f.iter().enumerate() {
            let again = factor * (8.0 / PI).sqrt() * r.sigma_xdot[d];
            assert!((again - r.b_eq[d]).abs() < solver.settings.tolerance, "dof {d}");
        }
    }

    #[test]
    fn picard_and_secant_agree() {
        let (g, hydro, drag) = setup(12.0, 6.0, 25.0, 40.0);
        let pto = PtoSetting::new(3e5, 8e5).unwrap();
        let sea = SeaState::new(3.5, 10.0).unwrap();
        let solve = |update| {
            SpectralSolver::default()
                .with_settings(SolverSettings {
                    update,
                    ..SolverSettings::default()
                })
                .solve(&g, &hydro, &drag, &pto, sea)
                .unwrap()
        };
        let p = solve(FixedPointUpdate::Picard);
        let s = solve(FixedPointUpdate::Secant);
        assert!(s.converged);
        if p.converged {
            assert!((p.power - s.power).abs() <= 1e-6 * s.power);
        }
        assert!(s.iterations <= p.iterations);
    }

    #[test]
    fn iteration_cap_is_flagged_not_thrown() {
        let (g, hydro, drag) = setup(5.5, 5.5, 45.0, 45.0);
        let solver = SpectralSolver::default().with_settings(SolverSettings {
            max_iterations: 2,
            ..SolverSettings::default()
        });
        let r = solver
            .solve(
                &g,
                &hydro,
                &drag,
                &PtoSetting::new(2e5, 1.5e5).unwrap(),
                SeaState::new(3.0, 8.0).unwrap(),
            )
            .unwrap();
        assert!(!r.converged);
        assert_eq!(r.iterations, 2);
    }

    #[test]
    fn secant_step_fallbacks() {
        // degenerate slope -> Picard
        assert_eq!(secant_step(1.0, 2.0, 1.0, 3.0), 3.0);
        // contracting map: G(x) = 10 - x => r = 10 - 2x, root 5
        let x0 = 0.0;
        let x1 = 10.0;
        let r = |x: f64| 10.0 - 2.0 * x;
        assert!((secant_step(x1, r(x1), x0, r(x0)) - 5.0).abs() < 1e-12);
    }
}
