//! Closed-form approximation of the hydrodynamic coefficients of a fully
//! submerged vertical cylinder.
//!
//! This backend is an approximation for desk-scale studies, not a boundary
//! element solution:
//!
//! * excitation is the Froude-Krylov force of the incident wave, the dynamic
//!   pressure `rho g exp(k z) exp(-i k x)` integrated over the hull, with `k`
//!   from the finite-depth dispersion relation;
//! * radiation damping follows from that excitation through the Haskind
//!   relations of an axisymmetric body (heave capture width `1/k`, surge and
//!   pitch `2/k`), which keeps it non-negative and energy consistent;
//! * added mass is frequency independent: `rho V` in surge and sway, the
//!   disc value `8/3 rho a^3` in heave (the axial added mass of a short
//!   cylinder tends to that of its end disc), and a lateral strip plus disc
//!   term `rho pi a^2 H^3/12 + 16/45 rho a^5` in roll and pitch.
//!
//! Waves travel along +x, so sway, roll and yaw are not excited.

use std::f64::consts::PI;

use nalgebra::{Complex, Matrix6, Vector6};

use crate::dynamics::WecGeometry;
use crate::error::{Result, WecError};

use super::{FrequencyGrid, HydroCoefficients, HydroProvider};

/// Wavenumber solving `omega^2 = g k tanh(k h)`, by bracketed bisection.
pub fn dispersion_wavenumber(omega: f64, depth: f64, gravity: f64) -> Result<f64> {
    if !(omega.is_finite() && omega > 0.0 && depth > 0.0 && gravity > 0.0) {
        return Err(WecError::Domain(format!(
            "dispersion relation needs positive omega, depth and gravity (omega = {omega}, depth = {depth})"
        )));
    }
    let w2 = omega * omega;
    let residual = |k: f64| gravity * k * (k * depth).tanh() - w2;
    // tanh < 1 puts the root above the deep-water value; tanh(x) < x puts it
    // above the shallow-water value.
    let mut lo = (w2 / gravity).max(omega / (gravity * depth).sqrt()) * 0.5;
    let mut hi = lo * 4.0;
    while residual(hi) < 0.0 {
        lo = hi;
        hi *= 2.0;
    }
    while residual(lo) > 0.0 {
        lo *= 0.5;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if residual(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo <= f64::EPSILON * hi {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Bessel function of the first kind of integer order,
/// `J_n(x) = 1/(2 pi) int_0^{2 pi} cos(n t - x sin t) dt`.
///
/// The integrand is smooth and periodic so the trapezoid rule converges
/// geometrically once the node count exceeds `|x| + n`.
pub fn bessel_j(order: u32, x: f64) -> f64 {
    let nodes = 64 + 2 * (x.abs().ceil() as usize + order as usize);
    let h = 2.0 * PI / nodes as f64;
    let n = order as f64;
    let sum: f64 = (0..nodes)
        .map(|j| {
            let t = h * j as f64;
            (n * t - x * t.sin()).cos()
        })
        .sum();
    sum / nodes as f64
}

/// Froude-Krylov surge force, heave force and pitch moment (about the
/// centroid) per unit wave amplitude, complex amplitudes relative to the
/// incident elevation at the buoy axis.
pub fn froude_krylov_excitation(geom: &WecGeometry, k: f64) -> [Complex<f64>; 3] {
    let rho_g = geom.water_density * geom.gravity;
    let a = geom.radius;
    let z_top = -geom.submergence;
    let z_bot = z_top - geom.height;
    let z_c = 0.5 * (z_top + z_bot);
    let ka = k * a;
    let j1 = bessel_j(1, ka);
    let j2 = bessel_j(2, ka);
    let e_top = (k * z_top).exp();
    let e_bot = (k * z_bot).exp();

    // int e^{kz} dz and int (z - zc) e^{kz} dz over the hull height
    let z1 = (e_top - e_bot) / k;
    let moment_antiderivative = |z: f64| (k * z).exp() * ((z - z_c) / k - 1.0 / (k * k));
    let z2 = moment_antiderivative(z_top) - moment_antiderivative(z_bot);

    // int_disc e^{-ikx} dA and int_disc x e^{-ikx} dA
    let disc0 = 2.0 * PI * a * j1 / k;
    let disc1 = Complex::new(0.0, -2.0 * PI * a * a * j2 / k);

    let i = Complex::<f64>::i();
    let side = i * (2.0 * PI * rho_g * a * j1);
    let surge = side * z1;
    let heave = Complex::from(rho_g * disc0 * (e_bot - e_top));
    let pitch = side * z2 + disc1 * (rho_g * (e_top - e_bot));
    [surge, heave, pitch]
}

/// Group-velocity factor `(1 + 2kh / sinh 2kh) tanh kh` of the finite-depth
/// energy flux; 1 in deep water.
fn depth_factor(k: f64, depth: f64) -> f64 {
    let x = 2.0 * k * depth;
    let ratio = if x > 700.0 { 0.0 } else { x / x.sinh() };
    (1.0 + ratio) * (k * depth).tanh()
}

/// Analytic coefficient provider; see the module documentation.
#[derive(Debug, Clone, Copy, Default)]
pub struct AnalyticHydro;

impl AnalyticHydro {
    pub fn added_mass(geom: &WecGeometry) -> Matrix6<f64> {
        let rho = geom.water_density;
        let a = geom.radius;
        let h = geom.height;
        let translational = rho * geom.volume();
        let heave = 8.0 / 3.0 * rho * a.powi(3);
        let rotational = rho * PI * a * a * h.powi(3) / 12.0 + 16.0 / 45.0 * rho * a.powi(5);
        Matrix6::from_diagonal(&Vector6::new(
            translational,
            translational,
            heave,
            rotational,
            rotational,
            0.0,
        ))
    }
}

impl HydroProvider for AnalyticHydro {
    fn coefficients(&self, geom: &WecGeometry, grid: &FrequencyGrid) -> Result<HydroCoefficients> {
        geom.validate()?;
        let rho = geom.water_density;
        let g = geom.gravity;
        let added = Self::added_mass(geom);
        let mut added_mass = Vec::with_capacity(grid.len());
        let mut damping = Vec::with_capacity(grid.len());
        let mut excitation = Vec::with_capacity(grid.len());
        for &omega in grid.omegas() {
            let k = dispersion_wavenumber(omega, geom.depth, g)?;
            let [surge, heave, pitch] = froude_krylov_excitation(geom, k);
            let haskind = omega * k / (rho * g * g * depth_factor(k, geom.depth));
            let b11 = 0.25 * haskind * surge.norm_sqr();
            let b33 = 0.5 * haskind * heave.norm_sqr();
            let b55 = 0.25 * haskind * pitch.norm_sqr();
            let b15 = 0.25 * haskind * (surge * pitch.conj()).re;
            let mut b = Matrix6::zeros();
            b[(0, 0)] = b11;
            b[(1, 1)] = b11;
            b[(2, 2)] = b33;
            b[(3, 3)] = b55;
            b[(4, 4)] = b55;
            b[(0, 4)] = b15;
            b[(4, 0)] = b15;
            // sway-roll mirrors surge-pitch with the opposite moment sign
            b[(1, 3)] = -b15;
            b[(3, 1)] = -b15;
            let zero = Complex::from(0.0);
            added_mass.push(added);
            damping.push(b);
            excitation.push(Vector6::new(surge, zero, heave, zero, pitch, zero));
        }
        HydroCoefficients::new(grid.clone(), added_mass, damping, excitation)
    }

    fn label(&self) -> String {
        "analytic".into()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reference() -> WecGeometry {
        WecGeometry::new(5.5, 5.5, 45.0, 45.0).unwrap()
    }

    #[test]
    fn dispersion_reference_value() {
        let k = dispersion_wavenumber(1.0, 50.0, 9.81).unwrap();
        // Newton on w^2 = g k tanh(kh) from the deep-water guess
        let mut kn: f64 = 1.0 / 9.81;
        for _ in 0..50 {
            let t = (kn * 50.0).tanh();
            let f = 9.81 * kn * t - 1.0;
            let df = 9.81 * t + 9.81 * kn * 50.0 * (1.0 - t * t);
            kn -= f / df;
        }
        assert!((k - kn).abs() < 1e-12, "k = {k}, newton {kn}");
        assert!((k - 0.1020).abs() < 1e-4);
    }

    #[test]
    fn dispersion_residual_is_tiny() {
        for depth in [5.0, 50.0, 500.0] {
            for &w in FrequencyGrid::default().omegas() {
                let k = dispersion_wavenumber(w, depth, 9.81).unwrap();
                let r = (w * w - 9.81 * k * (k * depth).tanh()).abs();
                assert!(r < 1e-10 * w * w, "depth {depth} omega {w} residual {r}");
            }
        }
    }

    #[test]
    fn bessel_reference_values() {
        // Abramowitz & Stegun table 9.1
        assert!((bessel_j(0, 1.0) - 0.765_197_686_557_966_6).abs() < 1e-13);
        assert!((bessel_j(1, 1.0) - 0.440_050_585_744_933_5).abs() < 1e-13);
        assert!((bessel_j(2, 1.0) - 0.114_903_484_931_900_5).abs() < 1e-13);
        assert!((bessel_j(1, 10.0) - 0.043_472_746_168_861_44).abs() < 1e-12);
        assert!((bessel_j(0, 0.0) - 1.0).abs() < 1e-15);
    }

    /// Brute-force quadrature of the incident dynamic pressure over the hull.
    fn brute_force(geom: &WecGeometry, k: f64) -> [Complex<f64>; 3] {
        let rho_g = geom.water_density * geom.gravity;
        let a = geom.radius;
        let z_top = -geom.submergence;
        let z_bot = z_top - geom.height;
        let z_c = 0.5 * (z_top + z_bot);
        let p = |x: f64, z: f64| Complex::from_polar(rho_g * (k * z).exp(), -k * x);
        let nt = 256;
        let nz = 400;
        let nr = 400;
        let dt = 2.0 * PI / nt as f64;
        let dz = geom.height / nz as f64;
        let dr = a / nr as f64;
        let mut f = [Complex::from(0.0); 3];
        for it in 0..nt {
            let t = dt * it as f64;
            let c = t.cos();
            let x = a * c;
            for iz in 0..nz {
                let z = z_bot + (iz as f64 + 0.5) * dz;
                let dp = p(x, z) * (a * dt * dz);
                // dF = -p n dS with outward normal (cos t, sin t, 0)
                f[0] -= dp * c;
                f[2] -= dp * ((z - z_c) * c);
            }
            for ir in 0..nr {
                let r = (ir as f64 + 0.5) * dr;
                let x = r * c;
                let da = r * dr * dt;
                let top = p(x, z_top) * da;
                let bot = p(x, z_bot) * da;
                // top normal +z, bottom normal -z
                f[1] += bot - top;
                // moment about y: (r x dF)_y = z' dF_x - x dF_z
                f[2] -= x * (bot - top);
            }
        }
        f
    }

    #[test]
    fn closed_form_matches_hull_quadrature() {
        for (geom, omega) in [
            (reference(), 0.6),
            (reference(), 1.4),
            (WecGeometry::new(15.0, 6.0, 30.0, 50.0).unwrap(), 0.9),
        ] {
            let k = dispersion_wavenumber(omega, geom.depth, geom.gravity).unwrap();
            let closed = froude_krylov_excitation(&geom, k);
            let brute = brute_force(&geom, k);
            for (c, b) in closed.iter().zip(&brute) {
                let err = (c - b).norm() / b.norm().max(1.0);
                assert!(err < 1e-4, "closed {c} brute {b}");
            }
        }
    }

    #[test]
    fn long_wave_limits() {
        // k -> 0: surge -> i rho g k V, heave -> -rho g k V
        let geom = reference();
        let k = 1e-5;
        let [surge, heave, _] = froude_krylov_excitation(&geom, k);
        let scale = geom.water_density * geom.gravity * k * geom.volume();
        assert!((surge.im / scale - 1.0).abs() < 1e-3);
        assert!((heave.re / scale + 1.0).abs() < 1e-3);
    }

    #[test]
    fn coefficients_satisfy_invariants() {
        let grid = FrequencyGrid::default();
        for geom in [reference(), WecGeometry::new(20.0, 30.0, 60.0, 20.0).unwrap()] {
            let h = AnalyticHydro.coefficients(&geom, &grid).unwrap();
            for (a, b) in h.added_mass().iter().zip(h.radiation_damping()) {
                assert_eq!(a, &a.transpose());
                assert_eq!(b, &b.transpose());
                assert!((0..6).all(|i| b[(i, i)] >= 0.0));
                let eig = b.symmetric_eigenvalues();
                assert!(eig.min() >= -1e-9 * b.trace().abs().max(1.0));
            }
        }
    }

    #[test]
    fn heave_excitation_decays_at_high_frequency() {
        // past the peak of the depth attenuation window and below the first
        // zero of J1 (ka < 3.83) the decay is monotone
        let grid = FrequencyGrid::uniform(1.8, 3.0, 30).unwrap();
        let small = WecGeometry::new(3.0, 3.0, 45.0, 45.0).unwrap();
        let h = AnalyticHydro.coefficients(&small, &grid).unwrap();
        let mags: Vec<f64> = h.excitation().iter().map(|f| f[2].norm()).collect();
        assert!(mags.windows(2).all(|w| w[1] < w[0]), "{mags:?}");
        // larger buoys oscillate under the decaying bound rho g pi a^2 exp(-k d)
        let geom = reference();
        let h = AnalyticHydro.coefficients(&geom, &grid).unwrap();
        for (w, f) in grid.omegas().iter().zip(h.excitation()) {
            let k = dispersion_wavenumber(*w, geom.depth, geom.gravity).unwrap();
            let bound = geom.water_density * geom.gravity * PI * 5.5 * 5.5 * (-k * geom.submergence).exp();
            assert!(f[2].norm() <= bound);
        }
    }

    #[test]
    fn rejects_surface_piercing_buoy() {
        let mut geom = reference();
        geom.submergence = 0.0;
        assert!(AnalyticHydro
            .coefficients(&geom, &FrequencyGrid::default())
            .is_err());
        let mut geom = reference();
        geom.height = 60.0;
        assert!(AnalyticHydro
            .coefficients(&geom, &FrequencyGrid::default())
            .is_err());
    }
}
