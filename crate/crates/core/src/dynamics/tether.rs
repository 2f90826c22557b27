use serde::{Deserialize, Serialize};

use crate::error::{Result, WecError};

use super::{PtoSetting, SpectralResponse, WecGeometry};

/// Statistical peak quantile factor (99 %) applied to the tension std dev.
pub const PEAK_FACTOR: f64 = 2.57;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TetherForceStats {
    /// Static pretension per tether, N.
    pub pretension: f64,
    /// Largest tension standard deviation over the three tethers, N.
    pub sigma_ft: f64,
    /// `pretension + 2.57 sigma_ft`, N.
    pub peak_force: f64,
}

/// Tether tension statistics of a spectral response.
///
/// The net buoyancy `rho g V / 2` is shared by three tethers inclined
/// `alpha_t` from the vertical. Stiffness and damping tension fluctuations
/// are uncorrelated at equal times and add in quadrature.
pub fn tether_force_stats(
    geom: &WecGeometry,
    response: &SpectralResponse,
    pto: &PtoSetting,
) -> Result<TetherForceStats> {
    geom.validate()?;
    let cos_t = geom.tether_inclination.to_radians().cos();
    if !(cos_t > 0.0) {
        return Err(WecError::Geometry(format!(
            "tether inclination {} deg leaves no vertical component",
            geom.tether_inclination
        )));
    }
    let net_buoyancy = 0.5 * geom.water_density * geom.gravity * geom.volume();
    let pretension = net_buoyancy / (3.0 * cos_t);
    let sigma_ft = response
        .sigma_q
        .iter()
        .zip(&response.sigma_qdot)
        .map(|(q, qd)| ((pto.k_pto * q).powi(2) + (pto.b_pto * qd).powi(2)).sqrt())
        .fold(0.0, f64::max);
    Ok(TetherForceStats {
        pretension,
        sigma_ft,
        peak_force: pretension + PEAK_FACTOR * sigma_ft,
    })
}
