//! Spectral-domain model and design optimisation of a fully submerged,
//! three-tether cylindrical wave energy converter.
//!
//! The crate is organised bottom-up:
//!
//! * [`hydrodyn`]: wave spectra, drag coefficients and hydrodynamic
//!   coefficient providers (analytic approximation or tabulated import).
//! * [`dynamics`]: rigid-body and tether kinematics, and the statistically
//!   linearised spectral-domain solver.
//! * [`objectives`]: wave climates, the bounded design vector, annual average
//!   power and the LCoE proxy.
//! * [`optimize`]: six heuristic optimisers, the hybrid DE-NM block scheme and
//!   radius/aspect-ratio sweeps.
//! * [`cli`]: the `wecopt` command-line front end.

// `!(x > 0.0)` style checks are used on purpose to reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod dynamics;
pub mod error;
pub mod hydrodyn;
pub mod objectives;
pub mod optimize;

pub use error::{Result, WecError};
