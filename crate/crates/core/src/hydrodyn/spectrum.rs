use crate::error::{Result, WecError};

use super::SeaState;

/// One-sided Pierson-Moskowitz elevation spectrum in angular frequency,
/// `S(w) = 5/16 Hs^2 wp^4 w^-5 exp(-5/4 (wp/w)^4)`, in m^2 s.
///
/// The zeroth moment of this density is `Hs^2 / 16`.
pub fn pm_spectrum(sea: SeaState, omega: f64) -> Result<f64> {
    sea.validate()?;
    if !(omega.is_finite() && omega > 0.0) {
        return Err(WecError::Domain(format!(
            "spectrum frequency must be positive, got {omega}"
        )));
    }
    let wp = sea.peak_frequency();
    let ratio = wp / omega;
    let r4 = ratio * ratio * ratio * ratio;
    // wp^4 w^-5 = r^4 / w; the exponential underflows cleanly to zero as w -> 0.
    Ok(5.0 / 16.0 * sea.hs * sea.hs * r4 / omega * (-1.25 * r4).exp())
}
