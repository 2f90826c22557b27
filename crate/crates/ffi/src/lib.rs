//! C ABI over the `wecopt` model and optimisers.
//!
//! Every function returns a [`WecStatus`]; on failure a description is
//! kept per thread and can be read with [`wec_last_error_message`]. Handles
//! are opaque, created by `*_new`/`*_load` functions and released with the
//! matching `*_free`. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use wecopt::hydrodyn::{
    heave_drag_coefficient, pm_spectrum, AnalyticHydro, HydroProvider, SeaState, TableHydro,
};
use wecopt::objectives::{load_climate, DesignVector, Objective, WaveClimate, WecModel};
use wecopt::optimize::{optimise, Algorithm, OptimiserConfig};
use wecopt::WecError;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WecStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ParseError = 3,
    IoError = 4,
    NumericalError = 5,
    BufferTooSmall = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WecObjective {
    /// Annual average power, maximised.
    Power = 0,
    /// LCoE proxy, minimised.
    Lcoe = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WecAlgorithm {
    NelderMead = 0,
    OnePlusOneEa = 1,
    Pso = 2,
    CmaEs = 3,
    De = 4,
    Sade = 5,
}

/// Scalar results of one design evaluation.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct WecEvaluation {
    /// Annual average power, W.
    pub p_aap: f64,
    /// LCoE proxy; infinite when no power is produced.
    pub lcoe: f64,
    /// Buoy mass, kg.
    pub m_b: f64,
    /// Anchoring mass, kg.
    pub m_as: f64,
    /// Largest peak tether force, N.
    pub peak_force: f64,
    /// 1 when every sea state converged.
    pub converged: u32,
}

/// Opaque wave climate.
pub struct WecClimateHandle {
    climate: WaveClimate,
}

/// Opaque climate + hydrodynamics + solver bundle.
pub struct WecModelHandle {
    model: WecModel,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let text = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = text);
}

fn status_of(err: &WecError) -> WecStatus {
    match err {
        WecError::Parse { .. } => WecStatus::ParseError,
        WecError::Io { .. } => WecStatus::IoError,
        WecError::Singular { .. } => WecStatus::NumericalError,
        WecError::Domain(_) | WecError::Geometry(_) | WecError::Config(_) => WecStatus::InvalidArgument,
    }
}

/// Runs `body`, translating errors and panics into status codes.
fn guarded(body: impl FnOnce() -> Result<(), (WecStatus, String)>) -> WecStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error("");
            WecStatus::Ok
        }
        Ok(Err((status, message))) => {
            set_error(&message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            WecStatus::Panic
        }
    }
}

fn fail(err: WecError) -> (WecStatus, String) {
    (status_of(&err), err.to_string())
}

fn null(name: &str) -> (WecStatus, String) {
    (WecStatus::NullPointer, format!("`{name}` is null"))
}

unsafe fn text<'a>(ptr: *const c_char, name: &str) -> Result<&'a str, (WecStatus, String)> {
    if ptr.is_null() {
        return Err(null(name));
    }
    CStr::from_ptr(ptr)
        .to_str()
        .map_err(|_| (WecStatus::InvalidArgument, format!("`{name}` is not valid UTF-8")))
}

/// Message of the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn wec_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn wec_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Pierson-Moskowitz spectral density, m^2 s / rad.
///
/// # Safety
/// `out` must be null or point to writable memory for one double.
#[no_mangle]
pub unsafe extern "C" fn wec_pm_spectrum(hs: f64, tp: f64, omega: f64, out: *mut f64) -> WecStatus {
    guarded(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let sea = SeaState::new(hs, tp).map_err(fail)?;
        *out = pm_spectrum(sea, omega).map_err(fail)?;
        Ok(())
    })
}

/// Heave drag coefficient for aspect ratio `H/a`.
///
/// # Safety
/// `out` must be null or point to writable memory for one double.
#[no_mangle]
pub unsafe extern "C" fn wec_heave_drag_coefficient(aspect_ratio: f64, out: *mut f64) -> WecStatus {
    guarded(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = heave_drag_coefficient(aspect_ratio).map_err(fail)?;
        Ok(())
    })
}

/// Parses climate CSV text (`hs,tp,probability`).
///
/// # Safety
/// `csv` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wec_climate_from_csv(
    csv: *const c_char,
    out: *mut *mut WecClimateHandle,
) -> WecStatus {
    guarded(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let climate = WaveClimate::from_csv(text(csv, "csv")?, "<memory>").map_err(fail)?;
        *out = Box::into_raw(Box::new(WecClimateHandle { climate }));
        Ok(())
    })
}

/// Reads a climate CSV file.
///
/// # Safety
/// `path` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wec_climate_load(path: *const c_char, out: *mut *mut WecClimateHandle) -> WecStatus {
    guarded(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let climate = load_climate(text(path, "path")?).map_err(fail)?;
        *out = Box::into_raw(Box::new(WecClimateHandle { climate }));
        Ok(())
    })
}

/// Number of sea states.
///
/// # Safety
/// `climate` must come from this library; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wec_climate_len(climate: *const WecClimateHandle, out: *mut usize) -> WecStatus {
    guarded(|| {
        let climate = climate.as_ref().ok_or_else(|| null("climate"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = climate.climate.len();
        Ok(())
    })
}

/// Releases a climate. Null is ignored.
///
/// # Safety
/// `climate` must be null or an unreleased handle from this library.
#[no_mangle]
pub unsafe extern "C" fn wec_climate_free(climate: *mut WecClimateHandle) {
    if !climate.is_null() {
        drop(Box::from_raw(climate));
    }
}

/// Builds a model on a copy of `climate`. `hydro` is `"analytic"`, the path
/// of a hydrodynamic table, or null for the analytic backend.
///
/// # Safety
/// `climate` must come from this library; `hydro` must be null or a
/// NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wec_model_new(
    climate: *const WecClimateHandle,
    hydro: *const c_char,
    out: *mut *mut WecModelHandle,
) -> WecStatus {
    guarded(|| {
        let climate = climate.as_ref().ok_or_else(|| null("climate"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let provider: Arc<dyn HydroProvider> = if hydro.is_null() {
            Arc::new(AnalyticHydro)
        } else {
            match text(hydro, "hydro")? {
                s if s.eq_ignore_ascii_case("analytic") => Arc::new(AnalyticHydro),
                path => Arc::new(TableHydro::load(path).map_err(fail)?),
            }
        };
        let model = WecModel::new(climate.climate.clone(), provider);
        *out = Box::into_raw(Box::new(WecModelHandle { model }));
        Ok(())
    })
}

/// Releases a model. Null is ignored.
///
/// # Safety
/// `model` must be null or an unreleased handle from this library.
#[no_mangle]
pub unsafe extern "C" fn wec_model_free(model: *mut WecModelHandle) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Length `4 + 2N` of the design vector.
///
/// # Safety
/// `model` must come from this library; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wec_model_dimension(model: *const WecModelHandle, out: *mut usize) -> WecStatus {
    guarded(|| {
        let model = model.as_ref().ok_or_else(|| null("model"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = model.model.space().dimension();
        Ok(())
    })
}

/// Evaluates a design given in physical units
/// `[a, H/a, alpha_t, alpha_ap, k_1..k_N, b_1..b_N]`.
///
/// # Safety
/// `design` must point to `len` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wec_evaluate(
    model: *const WecModelHandle,
    design: *const f64,
    len: usize,
    out: *mut WecEvaluation,
) -> WecStatus {
    guarded(|| {
        let model = model.as_ref().ok_or_else(|| null("model"))?;
        if design.is_null() {
            return Err(null("design"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let values = std::slice::from_raw_parts(design, len);
        let design = DesignVector::from_values(values).map_err(fail)?;
        let r = model.model.evaluate(&design).map_err(fail)?;
        *out = WecEvaluation {
            p_aap: r.p_aap,
            lcoe: r.lcoe,
            m_b: r.m_b,
            m_as: r.m_as,
            peak_force: r.peak_force,
            converged: r.converged as u32,
        };
        Ok(())
    })
}

/// Runs one optimiser with the default hyperparameters. The best design is
/// written to `best_design` in physical units (`capacity` must be at least
/// the model dimension) and its objective value to `best_value`.
///
/// # Safety
/// `best_design` must point to `capacity` writable doubles and
/// `best_value` to one.
#[no_mangle]
pub unsafe extern "C" fn wec_optimise(
    model: *const WecModelHandle,
    objective: WecObjective,
    algorithm: WecAlgorithm,
    budget: usize,
    seed: u64,
    best_design: *mut f64,
    capacity: usize,
    best_value: *mut f64,
) -> WecStatus {
    guarded(|| {
        let model = &model.as_ref().ok_or_else(|| null("model"))?.model;
        if best_design.is_null() {
            return Err(null("best_design"));
        }
        if best_value.is_null() {
            return Err(null("best_value"));
        }
        let space = model.space();
        if capacity < space.dimension() {
            return Err((
                WecStatus::BufferTooSmall,
                format!(
                    "best_design holds {capacity} values, {} needed",
                    space.dimension()
                ),
            ));
        }
        let objective = match objective {
            WecObjective::Power => Objective::Power,
            WecObjective::Lcoe => Objective::Lcoe,
        };
        let algorithm = match algorithm {
            WecAlgorithm::NelderMead => Algorithm::NelderMead,
            WecAlgorithm::OnePlusOneEa => Algorithm::OnePlusOneEa,
            WecAlgorithm::Pso => Algorithm::Pso,
            WecAlgorithm::CmaEs => Algorithm::CmaEs,
            WecAlgorithm::De => Algorithm::De,
            WecAlgorithm::Sade => Algorithm::Sade,
        };
        let config = OptimiserConfig::new(algorithm).with_budget(budget);
        let f = |x: &[f64]| model.objective_at(objective, x);
        let trace = optimise(&f, &space.bounds(), objective.sense(), &config, seed).map_err(fail)?;
        let design = space.decode(&trace.best_design).map_err(fail)?.to_values();
        std::slice::from_raw_parts_mut(best_design, design.len()).copy_from_slice(&design);
        *best_value = trace.best_value;
        Ok(())
    })
}
