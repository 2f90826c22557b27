//! Rigid-body and tether model of the buoy and the spectral-domain solver.

mod geometry;
mod kinematics;
mod rigid;
mod spectral;
mod tether;

pub use geometry::WecGeometry;
pub use kinematics::{
    anchor_points, attachment_points, inverse_jacobian, rotation, tether_azimuths, tether_directions,
    tether_lengths, InverseJacobian, TETHER_COUNT,
};
pub use rigid::{mass_matrix, pto_6dof_matrices, PtoSetting, PTO_BOUNDS};
pub use spectral::{FixedPointUpdate, SolverSettings, SpectralResponse, SpectralSolver};
pub use tether::{tether_force_stats, TetherForceStats, PEAK_FACTOR};
