use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Result, WecError};

/// Physical description of the submerged cylindrical buoy and its tethers.
///
/// The origin of the reference frame is on the still water level with `z`
/// pointing up; the buoy centroid sits at `z = -(d + H/2)` on the vertical
/// axis. The buoy mass is always half the displaced water mass.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WecGeometry {
    /// Cylinder radius `a`, m.
    pub radius: f64,
    /// Cylinder height `H`, m.
    pub height: f64,
    /// Depth of the buoy top below the still water level, m.
    pub submergence: f64,
    /// Water depth, m.
    pub depth: f64,
    /// Tether inclination from the vertical, deg.
    pub tether_inclination: f64,
    /// Attachment angle from the downward vertical through the centroid, deg.
    pub attachment_angle: f64,
    /// kg/m^3
    pub water_density: f64,
    /// m/s^2
    pub gravity: f64,
}

impl WecGeometry {
    pub const DEFAULT_SUBMERGENCE: f64 = 2.0;
    pub const DEFAULT_DEPTH: f64 = 50.0;
    pub const WATER_DENSITY: f64 = 1025.0;
    pub const GRAVITY: f64 = 9.81;

    /// Buoy at the default site: 2 m submergence in 50 m of sea water.
    pub fn new(radius: f64, height: f64, tether_inclination: f64, attachment_angle: f64) -> Result<Self> {
        let geom = Self {
            radius,
            height,
            submergence: Self::DEFAULT_SUBMERGENCE,
            depth: Self::DEFAULT_DEPTH,
            tether_inclination,
            attachment_angle,
            water_density: Self::WATER_DENSITY,
            gravity: Self::GRAVITY,
        };
        geom.validate()?;
        Ok(geom)
    }

    pub fn with_site(mut self, submergence: f64, depth: f64) -> Result<Self> {
        self.submergence = submergence;
        self.depth = depth;
        self.validate()?;
        Ok(self)
    }

    /// Checks the geometric invariants.
    ///
    /// A zero tether inclination (vertical tethers) and a zero attachment
    /// angle (all tethers at the bottom centre) are admitted as limiting
    /// cases; the optimisation bounds keep both strictly inside (0, 90).
    pub fn validate(&self) -> Result<()> {
        let positive = |v: f64| v.is_finite() && v > 0.0;
        if !positive(self.radius) || !positive(self.height) {
            return Err(WecError::Geometry(format!(
                "radius and height must be positive (a = {}, H = {})",
                self.radius, self.height
            )));
        }
        if !positive(self.submergence) {
            return Err(WecError::Geometry(format!(
                "buoy must be submerged below the surface (d = {})",
                self.submergence
            )));
        }
        if !(self.depth.is_finite() && self.submergence + self.height < self.depth) {
            return Err(WecError::Geometry(format!(
                "buoy reaches the sea floor (d + H = {} >= h = {})",
                self.submergence + self.height,
                self.depth
            )));
        }
        for (name, angle) in [
            ("tether inclination", self.tether_inclination),
            ("attachment angle", self.attachment_angle),
        ] {
            if !(angle.is_finite() && (0.0..90.0).contains(&angle)) {
                return Err(WecError::Geometry(format!(
                    "{name} must lie in [0, 90) deg, got {angle}"
                )));
            }
        }
        if !positive(self.water_density) || !positive(self.gravity) {
            return Err(WecError::Geometry(
                "water density and gravity must be positive".into(),
            ));
        }
        Ok(())
    }

    pub fn aspect_ratio(&self) -> f64 {
        self.height / self.radius
    }

    /// Displaced volume `pi a^2 H`, m^3.
    pub fn volume(&self) -> f64 {
        PI * self.radius * self.radius * self.height
    }

    /// `0.5 rho V`, kg.
    pub fn buoy_mass(&self) -> f64 {
        0.5 * self.water_density * self.volume()
    }

    /// Depth of the centroid below the still water level, m (negative z).
    pub fn centroid_z(&self) -> f64 {
        -(self.submergence + 0.5 * self.height)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_mass() {
        let g = WecGeometry::new(5.5, 5.5, 45.0, 45.0).unwrap();
        assert!((g.buoy_mass() - 267_874.769_842_263_4).abs() < 1e-6);
    }

    #[test]
    fn rejects_invalid() {
        assert!(WecGeometry::new(0.0, 5.0, 45.0, 45.0).is_err());
        assert!(WecGeometry::new(5.0, 48.0, 45.0, 45.0).is_err());
        assert!(WecGeometry::new(5.0, 5.0, 90.0, 45.0).is_err());
        assert!(WecGeometry::new(5.0, 5.0, 45.0, -1.0).is_err());
        let g = WecGeometry::new(5.0, 5.0, 45.0, 45.0).unwrap();
        assert!(g.with_site(0.0, 50.0).is_err());
        assert!(g.with_site(2.0, 6.0).is_err());
    }

    #[test]
    fn vertical_tethers_admitted() {
        assert!(WecGeometry::new(5.0, 5.0, 0.0, 45.0).is_ok());
    }
}
