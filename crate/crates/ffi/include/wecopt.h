#ifndef WECOPT_H
#define WECOPT_H

/* Generated with cbindgen:0.27.0 */

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum WecAlgorithm {
  WEC_ALGORITHM_NELDER_MEAD = 0,
  WEC_ALGORITHM_ONE_PLUS_ONE_EA = 1,
  WEC_ALGORITHM_PSO = 2,
  WEC_ALGORITHM_CMA_ES = 3,
  WEC_ALGORITHM_DE = 4,
  WEC_ALGORITHM_SADE = 5,
} WecAlgorithm;

typedef enum WecObjective {
  /**
   * Annual average power, maximised.
   */
  WEC_OBJECTIVE_POWER = 0,
  /**
   * LCoE proxy, minimised.
   */
  WEC_OBJECTIVE_LCOE = 1,
} WecObjective;

typedef enum WecStatus {
  WEC_STATUS_OK = 0,
  WEC_STATUS_NULL_POINTER = 1,
  WEC_STATUS_INVALID_ARGUMENT = 2,
  WEC_STATUS_PARSE_ERROR = 3,
  WEC_STATUS_IO_ERROR = 4,
  WEC_STATUS_NUMERICAL_ERROR = 5,
  WEC_STATUS_BUFFER_TOO_SMALL = 6,
  WEC_STATUS_PANIC = 7,
} WecStatus;

/**
 * Opaque wave climate.
 */
typedef struct WecClimateHandle WecClimateHandle;

/**
 * Opaque climate + hydrodynamics + solver bundle.
 */
typedef struct WecModelHandle WecModelHandle;

/**
 * Scalar results of one design evaluation.
 */
typedef struct WecEvaluation {
  /**
   * Annual average power, W.
   */
  double p_aap;
  /**
   * LCoE proxy; infinite when no power is produced.
   */
  double lcoe;
  /**
   * Buoy mass, kg.
   */
  double m_b;
  /**
   * Anchoring mass, kg.
   */
  double m_as;
  /**
   * Largest peak tether force, N.
   */
  double peak_force;
  /**
   * 1 when every sea state converged.
   */
  uint32_t converged;
} WecEvaluation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *wec_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *wec_version(void);

/**
 * Pierson-Moskowitz spectral density, m^2 s / rad.
 *
 * # Safety
 * `out` must be null or point to writable memory for one double.
 */
enum WecStatus wec_pm_spectrum(double hs, double tp, double omega, double *out);

/**
 * Heave drag coefficient for aspect ratio `H/a`.
 *
 * # Safety
 * `out` must be null or point to writable memory for one double.
 */
enum WecStatus wec_heave_drag_coefficient(double aspect_ratio, double *out);

/**
 * Parses climate CSV text (`hs,tp,probability`).
 *
 * # Safety
 * `csv` must be a NUL-terminated string; `out` must be writable.
 */
enum WecStatus wec_climate_from_csv(const char *csv, struct WecClimateHandle **out);

/**
 * Reads a climate CSV file.
 *
 * # Safety
 * `path` must be a NUL-terminated string; `out` must be writable.
 */
enum WecStatus wec_climate_load(const char *path, struct WecClimateHandle **out);

/**
 * Number of sea states.
 *
 * # Safety
 * `climate` must come from this library; `out` must be writable.
 */
enum WecStatus wec_climate_len(const struct WecClimateHandle *climate, size_t *out);

/**
 * Releases a climate. Null is ignored.
 *
 * # Safety
 * `climate` must be null or an unreleased handle from this library.
 */
void wec_climate_free(struct WecClimateHandle *climate);

/**
 * Builds a model on a copy of `climate`. `hydro` is `"analytic"`, the path
 * of a hydrodynamic table, or null for the analytic backend.
 *
 * # Safety
 * `climate` must come from this library; `hydro` must be null or a
 * NUL-terminated string; `out` must be writable.
 */
enum WecStatus wec_model_new(const struct WecClimateHandle *climate,
                             const char *hydro,
                             struct WecModelHandle **out);

/**
 * Releases a model. Null is ignored.
 *
 * # Safety
 * `model` must be null or an unreleased handle from this library.
 */
void wec_model_free(struct WecModelHandle *model);

/**
 * Length `4 + 2N` of the design vector.
 *
 * # Safety
 * `model` must come from this library; `out` must be writable.
 */
enum WecStatus wec_model_dimension(const struct WecModelHandle *model, size_t *out);

/**
 * Evaluates a design given in physical units
 * `[a, H/a, alpha_t, alpha_ap, k_1..k_N, b_1..b_N]`.
 *
 * # Safety
 * `design` must point to `len` doubles; `out` must be writable.
 */
enum WecStatus wec_evaluate(const struct WecModelHandle *model,
                            const double *design,
                            size_t len,
                            struct WecEvaluation *out);

/**
 * Runs one optimiser with the default hyperparameters. The best design is
 * written to `best_design` in physical units (`capacity` must be at least
 * the model dimension) and its objective value to `best_value`.
 *
 * # Safety
 * `best_design` must point to `capacity` writable doubles and
 * `best_value` to one.
 */
enum WecStatus wec_optimise(const struct WecModelHandle *model,
                            enum WecObjective objective,
                            enum WecAlgorithm algorithm,
                            size_t budget,
                            uint64_t seed,
                            double *best_design,
                            size_t capacity,
                            double *best_value);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WECOPT_H */
