//! Wave climates, the bounded design vector and the two scalar objectives:
//! annual average power and the LCoE proxy.

mod climate;
mod design;
mod evaluate;

use serde::{Deserialize, Serialize};

use crate::dynamics::WecGeometry;

pub use climate::{load_climate, ClimateState, WaveClimate, PROBABILITY_SLACK};
pub use design::{
    DesignSpace, DesignVector, ASPECT_BOUNDS, ATTACHMENT_ANGLE_BOUNDS, GEOMETRY_ENTRIES, RADIUS_BOUNDS,
    TETHER_ANGLE_BOUNDS,
};
pub use evaluate::{
    anchoring_mass, lcoe_proxy, EvaluationRecord, Objective, StateResult, WecModel, HOURS_PER_YEAR,
    REFERENCE_ANCHOR_MASS, REFERENCE_PEAK_FORCE,
};

/// Site constants shared by every design.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Site {
    /// Depth of the buoy top below the still water level, m.
    pub submergence: f64,
    /// Water depth, m.
    pub depth: f64,
    pub water_density: f64,
    pub gravity: f64,
}

impl Default for Site {
    fn default() -> Self {
        Self {
            submergence: WecGeometry::DEFAULT_SUBMERGENCE,
            depth: WecGeometry::DEFAULT_DEPTH,
            water_density: WecGeometry::WATER_DENSITY,
            gravity: WecGeometry::GRAVITY,
        }
    }
}
