use nalgebra::{Matrix3, Matrix6, Vector6};
use serde::{Deserialize, Serialize};

use crate::error::{Result, WecError};

use super::{InverseJacobian, WecGeometry};

/// Lower and upper bound on PTO stiffness and damping, N/m and N s/m.
pub const PTO_BOUNDS: (f64, f64) = (1e3, 1e8);

/// Spring-damper setting shared by the three tether PTO units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PtoSetting {
    /// N/m
    pub k_pto: f64,
    /// N s/m
    pub b_pto: f64,
}

impl PtoSetting {
    /// Checked against the PTO bounds.
    pub fn new(k_pto: f64, b_pto: f64) -> Result<Self> {
        let (lo, hi) = PTO_BOUNDS;
        for (name, v) in [("stiffness", k_pto), ("damping", b_pto)] {
            if !(v.is_finite() && v >= lo * (1.0 - 1e-12) && v <= hi * (1.0 + 1e-12)) {
                return Err(WecError::Domain(format!(
                    "PTO {name} {v} outside [{lo:e}, {hi:e}]"
                )));
            }
        }
        Ok(Self { k_pto, b_pto })
    }

    /// Unchecked setting for analysis outside the design bounds (zero
    /// stiffness, test rigs).
    pub fn unchecked(k_pto: f64, b_pto: f64) -> Self {
        Self { k_pto, b_pto }
    }
}

/// Rigid-body mass matrix of a uniform solid cylinder of half the displaced
/// water mass, about its centroid.
pub fn mass_matrix(geom: &WecGeometry) -> Result<Matrix6<f64>> {
    geom.validate()?;
    let m = geom.buoy_mass();
    let a2 = geom.radius * geom.radius;
    let h2 = geom.height * geom.height;
    let ixx = m * (3.0 * a2 + h2) / 12.0;
    let izz = 0.5 * m * a2;
    Ok(Matrix6::from_diagonal(&Vector6::new(m, m, m, ixx, ixx, izz)))
}

/// Six-DOF stiffness and damping of three identical tether PTOs,
/// `J^T diag(k) J` and `J^T diag(b) J`.
pub fn pto_6dof_matrices(pto: &PtoSetting, jinv: &InverseJacobian) -> (Matrix6<f64>, Matrix6<f64>) {
    let project = |c: f64| {
        let m = jinv.transpose() * Matrix3::from_diagonal_element(c) * jinv;
        // exact symmetry regardless of rounding in the product
        (m + m.transpose()) * 0.5
    };
    (project(pto.k_pto), project(pto.b_pto))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::inverse_jacobian;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn reference_mass_and_linearity() {
        let g = WecGeometry::new(5.5, 5.5, 45.0, 45.0).unwrap();
        let m = mass_matrix(&g).unwrap();
        assert!((m[(0, 0)] - 2.679e5).abs() / 2.679e5 < 1e-3);
        let g2 = WecGeometry::new(5.5, 11.0, 45.0, 45.0).unwrap();
        assert_eq!(mass_matrix(&g2).unwrap()[(2, 2)], 2.0 * m[(2, 2)]);
        assert!(m.cholesky().is_some());
    }

    #[test]
    fn zero_stiffness_gives_zero_matrix() {
        let g = WecGeometry::new(5.5, 5.5, 45.0, 45.0).unwrap();
        let j = inverse_jacobian(&g).unwrap();
        let (k, _) = pto_6dof_matrices(&PtoSetting::unchecked(0.0, 1e5), &j);
        assert_eq!(k, Matrix6::zeros());
    }

    #[test]
    fn vertical_tethers_act_in_parallel() {
        let g = WecGeometry::new(5.5, 5.5, 0.0, 45.0).unwrap();
        let j = inverse_jacobian(&g).unwrap();
        let (_, b) = pto_6dof_matrices(&PtoSetting::unchecked(2e5, 1.5e5), &j);
        assert!((b[(2, 2)] - 4.5e5).abs() < 1e-6);
    }

    #[test]
    fn random_projections_are_psd() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let j = InverseJacobian::from_fn(|_, _| rng.random_range(-5.0..5.0));
            let k = rng.random_range(1e3..1e8);
            let (km, _) = pto_6dof_matrices(&PtoSetting::unchecked(k, k), &j);
            let eig = km.symmetric_eigenvalues();
            assert!(eig.min() >= -1e-9 * km.norm(), "{eig}");
        }
    }

    #[test]
    fn pto_bounds_enforced() {
        assert!(PtoSetting::new(1e3, 1e8).is_ok());
        assert!(PtoSetting::new(999.0, 1e5).is_err());
        assert!(PtoSetting::new(1e5, 2e8).is_err());
    }
}
