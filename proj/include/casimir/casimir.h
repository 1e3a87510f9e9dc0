/* C interface to the Casimir library. All quantities are SI: rad/s, 1/m, m,
 * K, J/m^2, Pa. Every fallible call returns a casimir_status; on failure the
 * thread-local diagnostics below describe what went wrong. Output pointers
 * are written only on success. */
#ifndef CASIMIR_CASIMIR_H
#define CASIMIR_CASIMIR_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(CASIMIR_BUILDING_LIBRARY)
#    define CASIMIR_API __declspec(dllexport)
#  else
#    define CASIMIR_API __declspec(dllimport)
#  endif
#else
#  define CASIMIR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum casimir_status {
  CASIMIR_OK = 0,
  CASIMIR_ERR_INVALID_ARGUMENT = 1,
  CASIMIR_ERR_DOMAIN = 2,
  CASIMIR_ERR_PARSE = 3,
  CASIMIR_ERR_CONVERGENCE = 4,
  CASIMIR_ERR_TRUNCATION = 5,
  CASIMIR_ERR_PRECISION = 6,
  CASIMIR_ERR_REGIME = 7,
  CASIMIR_ERR_FIT = 8,
  CASIMIR_ERR_IO = 9,
  CASIMIR_ERR_INTERNAL = 99
} casimir_status;

/* Opaque, immutable after creation; safe to share between threads. */
typedef struct casimir_material casimir_material;

/* ---- diagnostics -------------------------------------------------------- */

/* Message of the last failed call on this thread ("" if none). */
CASIMIR_API const char* casimir_last_error(void);
/* 1-based line of the last parse error, 0 otherwise. */
CASIMIR_API int casimir_last_error_line(void);
/* Best estimate (convergence), partial sum (truncation), value (precision),
 * or condition number (fit) attached to the last error; NaN if none. */
CASIMIR_API double casimir_last_error_value(void);
/* Error estimate (convergence), term count (truncation) or noise (precision);
 * NaN if none. */
CASIMIR_API double casimir_last_error_aux(void);
CASIMIR_API const char* casimir_status_name(casimir_status status);
CASIMIR_API const char* casimir_version(void);

/* ---- materials ---------------------------------------------------------- */

CASIMIR_API casimir_status casimir_material_drude(double omega_p, double nu,
                                                  casimir_material** out);
/* Drude gold, omega_p = 9.03 eV, nu = 34.5 meV. */
CASIMIR_API casimir_status casimir_material_gold(casimir_material** out);
CASIMIR_API casimir_status casimir_material_plasma(double omega_p, casimir_material** out);
CASIMIR_API casimir_status casimir_material_table_file(const char* path,
                                                       casimir_material** out);
CASIMIR_API casimir_status casimir_material_table_text(const char* text,
                                                       casimir_material** out);
CASIMIR_API casimir_status casimir_material_table_points(const double* zeta,
                                                         const double* epsilon, size_t n,
                                                         casimir_material** out);
/* Constant squared reflection coefficients A (TM) and B (TE) in [0, 1]. */
CASIMIR_API casimir_status casimir_material_fixed(double a_tm, double b_te,
                                                  casimir_material** out);
CASIMIR_API void casimir_material_destroy(casimir_material* material);
/* "drude", "plasma", "table" or "fixed"; NULL for a NULL handle. */
CASIMIR_API const char* casimir_material_kind(const casimir_material* material);
/* Drude parameters of a Drude material, or of a table's low-frequency tail. */
CASIMIR_API casimir_status casimir_material_drude_parameters(const casimir_material* material,
                                                             double* omega_p, double* nu);

/* ---- units and dispersion ----------------------------------------------- */

CASIMIR_API casimir_status casimir_ev_to_rad_per_s(double energy_ev, double* out);
CASIMIR_API casimir_status casimir_matsubara_frequency(int64_t m, double temperature,
                                                       double* out);
CASIMIR_API casimir_status casimir_epsilon(const casimir_material* material, double zeta,
                                           double* out);
/* A and B at zeta > 0, q >= zeta / c. */
CASIMIR_API casimir_status casimir_reflection(const casimir_material* material, double zeta,
                                              double q, double* a_tm, double* b_te);
CASIMIR_API casimir_status casimir_zero_mode_reflection(const casimir_material* material,
                                                        double q, double* a_tm, double* b_te);

/* ---- Lifshitz sums ------------------------------------------------------ */

typedef struct casimir_series_result {
  double total; /* J/m^2 for the free energy, Pa for the pressure */
  double te;
  double tm;
  double tail_estimate;
  double quadrature_error;
  int64_t m_max;
} casimir_series_result;

/* Free energy per unit area. When terms is non-NULL, up to terms_capacity
 * per-m contributions are copied and *terms_written (if non-NULL) receives
 * m_max + 1, the full count. */
CASIMIR_API casimir_status casimir_free_energy(const casimir_material* material, double gap,
                                               double temperature, double tol,
                                               casimir_series_result* out, double* terms,
                                               size_t terms_capacity, size_t* terms_written);
CASIMIR_API casimir_status casimir_pressure(const casimir_material* material, double gap,
                                            double temperature, double tol,
                                            casimir_series_result* out);
CASIMIR_API casimir_status casimir_matsubara_term(const casimir_material* material, double gap,
                                                  double temperature, int64_t m,
                                                  double quad_tol, double* te, double* tm,
                                                  double* error);

typedef struct casimir_zero_temp_result {
  double f0;
  double te;
  double tm;
  double error_estimate;
  size_t evaluations;
} casimir_zero_temp_result;

CASIMIR_API casimir_status casimir_zero_temp(const casimir_material* material, double gap,
                                             double tol, casimir_zero_temp_result* out);

/* ---- thermal analysis --------------------------------------------------- */

typedef struct casimir_thermal_result {
  double total; /* F(T) - F(0), J/m^2 */
  double te;
  double tm;
  double noise;
} casimir_thermal_result;

CASIMIR_API casimir_status casimir_thermal_correction(const casimir_material* material,
                                                      double gap, double temperature,
                                                      casimir_thermal_result* out);
/* S = -dF/dT, J/(m^2 K). */
CASIMIR_API casimir_status casimir_entropy(const casimir_material* material, double gap,
                                           double temperature, double* out);
CASIMIR_API casimir_status casimir_delta_f_te_numeric(const casimir_material* material,
                                                      double gap, double temperature,
                                                      double tol, double* out);
/* Evaluates delta_f_te_numeric on n temperatures concurrently. */
CASIMIR_API casimir_status casimir_delta_f_te_samples(const casimir_material* material,
                                                      double gap, const double* temperatures,
                                                      size_t n, double tol, double* out);
CASIMIR_API casimir_status casimir_default_fit_grid(double* out, size_t capacity,
                                                    size_t* count);

/* ---- asymptotics -------------------------------------------------------- */

CASIMIR_API casimir_status casimir_asymptotic_coefficients(const casimir_material* material,
                                                           double gap, double* c1, double* c2);
CASIMIR_API casimir_status casimir_delta_f_te_leading(const casimir_material* material,
                                                      double temperature, double* out);
CASIMIR_API casimir_status casimir_pade_delta_f(double c1, double c2, double temperature,
                                                double* out);
CASIMIR_API casimir_status casimir_pade_entropy(double c1, double c2, double temperature,
                                                double* out);
CASIMIR_API double casimir_g_prime_zero(void);
CASIMIR_API casimir_status casimir_g_prime_zero_integral(double* out);

typedef struct casimir_fit_result {
  double d1;
  double d2;
  double d3;
  double residual_norm;
  double condition_number;
} casimir_fit_result;

/* basis_terms 0 selects the default. */
CASIMIR_API casimir_status casimir_fit_low_temp(const double* temperatures,
                                                const double* delta_f, size_t n,
                                                int basis_terms, casimir_fit_result* out);

typedef struct casimir_r_summary {
  double intercept;
  double intercept_stderr;
  double slope;
  double correlation;
  size_t fitted_points;
} casimir_r_summary;

/* r_out receives n values of R. */
CASIMIR_API casimir_status casimir_r_series(double c1, double c2, const double* temperatures,
                                            const double* delta_f, size_t n, double* r_out,
                                            casimir_r_summary* summary);

/* ---- grids and reference data ------------------------------------------- */

/* Outputs are nz * nk arrays, zeta-major. in_domain is 0 below the light
 * line, where A and B are reported as 0. */
CASIMIR_API casimir_status casimir_coefficient_surface(const casimir_material* material,
                                                       const double* zeta, size_t nz,
                                                       const double* kperp, size_t nk,
                                                       double* a_out, double* b_out,
                                                       int* in_domain);
CASIMIR_API casimir_status casimir_classical_pressure(double gap, double temperature,
                                                      double* out);
CASIMIR_API casimir_status casimir_classical_limit_ratio(const casimir_material* material,
                                                         double gap, double temperature,
                                                         double tol, double* out);

CASIMIR_API size_t casimir_reference_pressure_count(void);
CASIMIR_API casimir_status casimir_reference_pressure(size_t index, double* gap_um,
                                                      double* temperature,
                                                      double* pressure_mpa);
CASIMIR_API const char* casimir_reference_source(void);

#ifdef __cplusplus
}
#endif

#endif /* CASIMIR_CASIMIR_H */
