//! Wave spectra, viscous drag coefficients and frequency-dependent
//! hydrodynamic coefficients.

mod analytic;
mod coefficients;
mod drag;
mod grid;
mod spectrum;
mod table;

pub use analytic::{bessel_j, dispersion_wavenumber, froude_krylov_excitation, AnalyticHydro};
pub use coefficients::{HydroCoefficients, HydroProvider};
pub use drag::{build_drag_model, heave_drag_coefficient, DragModel};
pub use grid::{FrequencyGrid, SeaState};
pub use spectrum::pm_spectrum;
pub use table::{load_hydro_table, parse_hydro_table, write_hydro_table, TableHydro};
