//! The bounded design vector `[a, H/a, alpha_t, alpha_ap, k_pto.., b_pto..]`
//! and its search coordinates.
//!
//! Geometric entries are searched linearly. PTO stiffness and damping span
//! five decades, so their search coordinate is `log10` of the physical value.

use serde::{Deserialize, Serialize};

use crate::dynamics::{PtoSetting, WecGeometry, PTO_BOUNDS};
use crate::error::{Result, WecError};
use crate::optimize::Bounds;

use super::Site;

pub const RADIUS_BOUNDS: (f64, f64) = (5.0, 20.0);
pub const ASPECT_BOUNDS: (f64, f64) = (0.4, 1.5);
pub const TETHER_ANGLE_BOUNDS: (f64, f64) = (10.0, 80.0);
pub const ATTACHMENT_ANGLE_BOUNDS: (f64, f64) = (10.0, 80.0);

/// Number of geometric entries ahead of the PTO vectors.
pub const GEOMETRY_ENTRIES: usize = 4;

/// Relative slack on the bound checks of physical values, absorbing the
/// rounding of the log10 round trip.
const BOUND_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DesignVector {
    /// m
    pub radius: f64,
    /// H/a
    pub aspect_ratio: f64,
    /// deg
    pub tether_inclination: f64,
    /// deg
    pub attachment_angle: f64,
    /// Per sea state, N/m.
    pub k_pto: Vec<f64>,
    /// Per sea state, N s/m.
    pub b_pto: Vec<f64>,
}

impl DesignVector {
    pub fn n_states(&self) -> usize {
        self.k_pto.len()
    }

    pub fn len(&self) -> usize {
        GEOMETRY_ENTRIES + self.k_pto.len() + self.b_pto.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Same PTO setting in every sea state.
    pub fn uniform(
        radius: f64,
        aspect_ratio: f64,
        tether_inclination: f64,
        attachment_angle: f64,
        pto: PtoSetting,
        n_states: usize,
    ) -> Self {
        Self {
            radius,
            aspect_ratio,
            tether_inclination,
            attachment_angle,
            k_pto: vec![pto.k_pto; n_states],
            b_pto: vec![pto.b_pto; n_states],
        }
    }

    /// Checks every entry against its bound.
    pub fn validate(&self) -> Result<()> {
        if self.k_pto.len() != self.b_pto.len() || self.k_pto.is_empty() {
            return Err(WecError::Domain(format!(
                "PTO vectors must be non-empty and of equal length ({} vs {})",
                self.k_pto.len(),
                self.b_pto.len()
            )));
        }
        let check = |name: &str, v: f64, (lo, hi): (f64, f64)| -> Result<()> {
            let slack = BOUND_SLACK * hi.abs();
            if v.is_finite() && v >= lo - slack && v <= hi + slack {
                Ok(())
            } else {
                Err(WecError::Domain(format!("{name} = {v} outside [{lo}, {hi}]")))
            }
        };
        check("radius", self.radius, RADIUS_BOUNDS)?;
        check("aspect ratio", self.aspect_ratio, ASPECT_BOUNDS)?;
        check("tether inclination", self.tether_inclination, TETHER_ANGLE_BOUNDS)?;
        check("attachment angle", self.attachment_angle, ATTACHMENT_ANGLE_BOUNDS)?;
        for (i, (k, b)) in self.k_pto.iter().zip(&self.b_pto).enumerate() {
            check(&format!("k_pto[{i}]"), *k, PTO_BOUNDS)?;
            check(&format!("b_pto[{i}]"), *b, PTO_BOUNDS)?;
        }
        Ok(())
    }

    pub fn geometry(&self, site: &Site) -> Result<WecGeometry> {
        let geom = WecGeometry {
            radius: self.radius,
            height: self.radius * self.aspect_ratio,
            submergence: site.submergence,
            depth: site.depth,
            tether_inclination: self.tether_inclination,
            attachment_angle: self.attachment_angle,
            water_density: site.water_density,
            gravity: site.gravity,
        };
        geom.validate()?;
        Ok(geom)
    }

    pub fn pto(&self, state: usize) -> PtoSetting {
        PtoSetting::unchecked(self.k_pto[state], self.b_pto[state])
    }

    /// Physical values in vector order.
    pub fn to_values(&self) -> Vec<f64> {
        let mut v = vec![
            self.radius,
            self.aspect_ratio,
            self.tether_inclination,
            self.attachment_angle,
        ];
        v.extend(&self.k_pto);
        v.extend(&self.b_pto);
        v
    }

    /// Builds a design from physical values `[a, H/a, alpha_t, alpha_ap, k.., b..]`.
    pub fn from_values(values: &[f64]) -> Result<Self> {
        if values.len() < GEOMETRY_ENTRIES + 2 || !(values.len() - GEOMETRY_ENTRIES).is_multiple_of(2) {
            return Err(WecError::Domain(format!(
                "design vector length {} is not 4 + 2N",
                values.len()
            )));
        }
        let n = (values.len() - GEOMETRY_ENTRIES) / 2;
        Ok(Self {
            radius: values[0],
            aspect_ratio: values[1],
            tether_inclination: values[2],
            attachment_angle: values[3],
            k_pto: values[4..4 + n].to_vec(),
            b_pto: values[4 + n..].to_vec(),
        })
    }

    /// Whitespace-separated physical values.
    pub fn parse(text: &str) -> Result<Self> {
        let values = text
            .split_whitespace()
            .map(|t| {
                t.parse::<f64>()
                    .map_err(|_| WecError::Domain(format!("design value `{t}` is not a number")))
            })
            .collect::<Result<Vec<f64>>>()?;
        Self::from_values(&values)
    }

    pub fn to_text(&self) -> String {
        let values: Vec<String> = self.to_values().iter().map(|v| v.to_string()).collect();
        values.join(" ") + "\n"
    }
}

/// Encoding between physical designs and the bounded search coordinates for
/// a climate of `n_states` sea states.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DesignSpace {
    pub n_states: usize,
}

impl DesignSpace {
    pub fn new(n_states: usize) -> Self {
        Self { n_states }
    }

    pub fn dimension(&self) -> usize {
        GEOMETRY_ENTRIES + 2 * self.n_states
    }

    /// Search-coordinate bounds.
    pub fn bounds(&self) -> Bounds {
        let (plo, phi) = PTO_BOUNDS;
        let mut lower = vec![
            RADIUS_BOUNDS.0,
            ASPECT_BOUNDS.0,
            TETHER_ANGLE_BOUNDS.0,
            ATTACHMENT_ANGLE_BOUNDS.0,
        ];
        let mut upper = vec![
            RADIUS_BOUNDS.1,
            ASPECT_BOUNDS.1,
            TETHER_ANGLE_BOUNDS.1,
            ATTACHMENT_ANGLE_BOUNDS.1,
        ];
        lower.resize(self.dimension(), plo.log10());
        upper.resize(self.dimension(), phi.log10());
        Bounds::new(lower, upper).expect("design bounds are well formed")
    }

    pub fn encode(&self, design: &DesignVector) -> Result<Vec<f64>> {
        if design.n_states() != self.n_states || design.b_pto.len() != self.n_states {
            return Err(WecError::Domain(format!(
                "design has {} PTO settings, climate has {} states",
                design.n_states(),
                self.n_states
            )));
        }
        design.validate()?;
        let mut x = design.to_values();
        for v in &mut x[GEOMETRY_ENTRIES..] {
            *v = v.log10();
        }
        Ok(x)
    }

    pub fn decode(&self, x: &[f64]) -> Result<DesignVector> {
        if x.len() != self.dimension() {
            return Err(WecError::Domain(format!(
                "search vector length {} != {}",
                x.len(),
                self.dimension()
            )));
        }
        let mut values = x.to_vec();
        for v in &mut values[GEOMETRY_ENTRIES..] {
            *v = 10f64.powf(*v);
        }
        let design = DesignVector::from_values(&values)?;
        design.validate()?;
        Ok(design)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn log_mapping_endpoints() {
        let space = DesignSpace::new(1);
        let d = space.decode(&[10.0, 1.0, 45.0, 45.0, 3.0, 8.0]).unwrap();
        assert_eq!(d.k_pto[0], 1e3);
        assert_eq!(d.b_pto[0], 1e8);
    }

    #[test]
    fn dimension_for_34_states() {
        assert_eq!(DesignSpace::new(34).dimension(), 72);
        assert_eq!(DesignSpace::new(34).bounds().len(), 72);
    }

    #[test]
    fn round_trip_random_designs() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let space = DesignSpace::new(5);
        let bounds = space.bounds();
        for _ in 0..100 {
            let x: Vec<f64> = (0..bounds.len())
                .map(|i| rng.random_range(bounds.lower()[i]..=bounds.upper()[i]))
                .collect();
            let z = space.decode(&x).unwrap();
            let back = space.decode(&space.encode(&z).unwrap()).unwrap();
            for (a, b) in z.to_values().iter().zip(back.to_values()) {
                assert!((a - b).abs() <= 1e-12 * a.abs());
            }
        }
    }

    #[test]
    fn wrong_length_and_out_of_bounds() {
        let space = DesignSpace::new(2);
        assert!(space.decode(&[10.0, 1.0, 45.0, 45.0, 5.0, 5.0]).is_err());
        assert!(space
            .decode(&[25.0, 1.0, 45.0, 45.0, 5.0, 5.0, 5.0, 5.0])
            .is_err());
        assert!(DesignVector::from_values(&[1.0, 2.0, 3.0]).is_err());
        assert!(DesignVector::from_values(&[1.0, 2.0, 3.0, 4.0, 5.0]).is_err());
    }

    #[test]
    fn text_round_trip() {
        let d = DesignVector::uniform(5.5, 1.0, 45.0, 45.0, PtoSetting::new(2e5, 1.5e5).unwrap(), 2);
        assert_eq!(DesignVector::parse(&d.to_text()).unwrap(), d);
        assert!(DesignVector::parse("1 2 x").is_err());
    }
}
