use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::dynamics::WecGeometry;
use crate::error::{Result, WecError};

/// Quadratic drag coefficients and reference areas for the six rigid-body
/// modes (surge, sway, heave, roll, pitch, yaw).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DragModel {
    pub cd: [f64; 6],
    /// m^2 for translations, m^5 for rotations.
    pub areas: [f64; 6],
}

impl DragModel {
    pub fn new(cd: [f64; 6], areas: [f64; 6]) -> Result<Self> {
        let bad = cd
            .iter()
            .chain(areas.iter())
            .any(|v| !(v.is_finite() && *v >= 0.0));
        if bad {
            return Err(WecError::Domain(
                "drag coefficients and areas must be finite and non-negative".into(),
            ));
        }
        Ok(Self { cd, areas })
    }

    /// No viscous drag; the spectral solver reduces to the linear
    /// frequency-domain model.
    pub fn zero() -> Self {
        Self {
            cd: [0.0; 6],
            areas: [0.0; 6],
        }
    }

    /// `1/2 rho Cd A` per mode, the factor in front of `|v| v`.
    pub fn quadratic_factors(&self, water_density: f64) -> [f64; 6] {
        std::array::from_fn(|i| 0.5 * water_density * self.cd[i] * self.areas[i])
    }

    pub fn is_zero(&self) -> bool {
        self.cd.iter().zip(&self.areas).all(|(c, a)| c * a == 0.0)
    }
}

/// Axial-flow drag coefficient of a cylinder as a linear function of its
/// height-to-radius ratio, `1.2 - 0.12 H/a`, floored at zero.
pub fn heave_drag_coefficient(aspect_ratio: f64) -> Result<f64> {
    if !(aspect_ratio.is_finite() && aspect_ratio >= 0.0) {
        return Err(WecError::Domain(format!(
            "aspect ratio must be non-negative, got {aspect_ratio}"
        )));
    }
    Ok((1.2 - 0.12 * aspect_ratio).max(0.0))
}

/// Surge/sway 1.0, roll/pitch 0.2, yaw 0 (axisymmetric hull).
const CD_SURGE: f64 = 1.0;
const CD_ROLL: f64 = 0.2;
const CD_YAW: f64 = 0.0;

/// Drag model of the cylindrical buoy.
///
/// Reference areas: the projected rectangle `2aH` in surge and sway, the end
/// disc `pi a^2` in heave. For roll and pitch the lateral strip of width `2a`
/// rotating about the centroid gives a drag moment
/// `1/2 rho Cd (2a) int |z|^3 dz |w| w`, so the area-moment is
/// `2a * 2 (H/2)^4 / 4 = a H^4 / 16` (m^5). Yaw carries no drag.
pub fn build_drag_model(geom: &WecGeometry) -> Result<DragModel> {
    geom.validate()?;
    let a = geom.radius;
    let h = geom.height;
    let cd3 = heave_drag_coefficient(h / a)?;
    let lateral = 2.0 * a * h;
    let rotational = a * h.powi(4) / 16.0;
    DragModel::new(
        [CD_SURGE, CD_SURGE, cd3, CD_ROLL, CD_ROLL, CD_YAW],
        [lateral, lateral, PI * a * a, rotational, rotational, 0.0],
    )
}
