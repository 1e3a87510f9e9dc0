#include "casimir/casimir.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <new>
#include <sstream>
#include <string>
#include <vector>

#include "casimir/asymptotics.hpp"
#include "casimir/constants.hpp"
#include "casimir/dispersion.hpp"
#include "casimir/error.hpp"
#include "casimir/lifshitz.hpp"
#include "casimir/reference_data.hpp"
#include "casimir/thermo.hpp"
#include "casimir/zero_temp.hpp"

struct casimir_material {
  casimir::Surface surface;
};

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct LastError {
  std::string message;
  int line = 0;
  double value = kNaN;
  double aux = kNaN;
};

thread_local LastError g_last;

void clear_error() {
  g_last.message.clear();
  g_last.line = 0;
  g_last.value = kNaN;
  g_last.aux = kNaN;
}

casimir_status fail(casimir_status status, std::string message) {
  clear_error();
  g_last.message = std::move(message);
  return status;
}

// Runs body() and maps any exception to a status. body returns nothing;
// outputs are assigned inside it only after every computation succeeded.
template <class F>
casimir_status guarded(F&& body) {
  try {
    body();
    clear_error();
    return CASIMIR_OK;
  } catch (const casimir::ParseError& e) {
    const auto st = fail(CASIMIR_ERR_PARSE, e.what());
    g_last.line = e.line();
    return st;
  } catch (const casimir::ConvergenceError& e) {
    const auto st = fail(CASIMIR_ERR_CONVERGENCE, e.what());
    g_last.value = e.best_estimate();
    g_last.aux = e.error_estimate();
    return st;
  } catch (const casimir::TruncationError& e) {
    const auto st = fail(CASIMIR_ERR_TRUNCATION, e.what());
    g_last.value = e.partial_sum();
    g_last.aux = static_cast<double>(e.terms());
    return st;
  } catch (const casimir::PrecisionError& e) {
    const auto st = fail(CASIMIR_ERR_PRECISION, e.what());
    g_last.value = e.value();
    g_last.aux = e.noise();
    return st;
  } catch (const casimir::FitError& e) {
    const auto st = fail(CASIMIR_ERR_FIT, e.what());
    g_last.value = e.condition_number();
    return st;
  } catch (const casimir::Error& e) {
    return fail(static_cast<casimir_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(CASIMIR_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(CASIMIR_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(CASIMIR_ERR_INTERNAL, "unknown exception");
  }
}

void need(const void* p, const char* what) {
  if (p == nullptr) {
    throw casimir::InvalidArgument(std::string(what) + " must not be NULL");
  }
}

const casimir::Surface& surface_of(const casimir_material* m) {
  need(m, "material");
  return m->surface;
}

const casimir::DispersionModel& model_of(const casimir_material* m) {
  const auto* model = std::get_if<casimir::DispersionModel>(&surface_of(m));
  if (model == nullptr) {
    throw casimir::InvalidArgument("operation requires a dispersive material, not fixed coefficients");
  }
  return *model;
}

// Drude model of a Drude material or of a table's low-frequency tail.
casimir::DrudeModel drude_of(const casimir_material* m) {
  const auto& model = model_of(m);
  if (const auto* d = std::get_if<casimir::DrudeModel>(&model)) return *d;
  if (const auto* t = std::get_if<casimir::TabulatedPermittivity>(&model)) {
    return t->low_freq_extrapolator();
  }
  throw casimir::InvalidArgument("operation requires a Drude-type material");
}

casimir::PlateSystem plates(const casimir_material* m, double gap, double temperature) {
  return casimir::PlateSystem{gap, temperature, surface_of(m)};
}

std::vector<casimir::TemperatureSample> samples_from(const double* t, const double* f,
                                                      size_t n) {
  if (n > 0) {
    need(t, "temperatures");
    need(f, "delta_f");
  }
  std::vector<casimir::TemperatureSample> s(n);
  for (size_t i = 0; i < n; ++i) s[i] = {t[i], f[i]};
  return s;
}

}  // namespace

extern "C" {

const char* casimir_last_error(void) { return g_last.message.c_str(); }
int casimir_last_error_line(void) { return g_last.line; }
double casimir_last_error_value(void) { return g_last.value; }
double casimir_last_error_aux(void) { return g_last.aux; }

const char* casimir_status_name(casimir_status status) {
  switch (status) {
    case CASIMIR_OK: return "ok";
    case CASIMIR_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case CASIMIR_ERR_DOMAIN: return "domain";
    case CASIMIR_ERR_PARSE: return "parse";
    case CASIMIR_ERR_CONVERGENCE: return "convergence";
    case CASIMIR_ERR_TRUNCATION: return "truncation";
    case CASIMIR_ERR_PRECISION: return "precision";
    case CASIMIR_ERR_REGIME: return "regime";
    case CASIMIR_ERR_FIT: return "fit";
    case CASIMIR_ERR_IO: return "io";
    case CASIMIR_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* casimir_version(void) { return "1.0.0"; }

// ---- materials ------------------------------------------------------------

casimir_status casimir_material_drude(double omega_p, double nu, casimir_material** out) {
  return guarded([&] {
    need(out, "out");
    *out = new casimir_material{casimir::DispersionModel{casimir::DrudeModel(omega_p, nu)}};
  });
}

casimir_status casimir_material_gold(casimir_material** out) {
  return guarded([&] {
    need(out, "out");
    *out = new casimir_material{casimir::DispersionModel{casimir::DrudeModel::gold()}};
  });
}

casimir_status casimir_material_plasma(double omega_p, casimir_material** out) {
  return guarded([&] {
    need(out, "out");
    *out = new casimir_material{casimir::DispersionModel{casimir::PlasmaModel(omega_p)}};
  });
}

casimir_status casimir_material_table_file(const char* path, casimir_material** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    auto table = casimir::load_permittivity_table(std::filesystem::path(path));
    *out = new casimir_material{casimir::DispersionModel{std::move(table)}};
  });
}

casimir_status casimir_material_table_text(const char* text, casimir_material** out) {
  return guarded([&] {
    need(text, "text");
    need(out, "out");
    std::istringstream in{std::string(text)};
    auto table = casimir::load_permittivity_table(in);
    *out = new casimir_material{casimir::DispersionModel{std::move(table)}};
  });
}

casimir_status casimir_material_table_points(const double* zeta, const double* epsilon,
                                             size_t n, casimir_material** out) {
  return guarded([&] {
    need(zeta, "zeta");
    need(epsilon, "epsilon");
    need(out, "out");
    std::vector<casimir::TabulatedPermittivity::Point> pts(n);
    for (size_t i = 0; i < n; ++i) pts[i] = {zeta[i], epsilon[i]};
    casimir::TabulatedPermittivity table(std::move(pts));
    *out = new casimir_material{casimir::DispersionModel{std::move(table)}};
  });
}

casimir_status casimir_material_fixed(double a_tm, double b_te, casimir_material** out) {
  return guarded([&] {
    need(out, "out");
    if (!(a_tm >= 0.0 && a_tm <= 1.0) || !(b_te >= 0.0 && b_te <= 1.0)) {
      throw casimir::InvalidArgument("fixed reflectivities must lie in [0, 1]");
    }
    *out = new casimir_material{casimir::FixedReflectivity{a_tm, b_te}};
  });
}

void casimir_material_destroy(casimir_material* material) { delete material; }

const char* casimir_material_kind(const casimir_material* material) {
  if (material == nullptr) return nullptr;
  const auto* model = std::get_if<casimir::DispersionModel>(&material->surface);
  if (model == nullptr) return "fixed";
  return casimir::model_name(*model).data();
}

casimir_status casimir_material_drude_parameters(const casimir_material* material,
                                                 double* omega_p, double* nu) {
  return guarded([&] {
    need(omega_p, "omega_p");
    need(nu, "nu");
    const auto d = drude_of(material);
    *omega_p = d.omega_p();
    *nu = d.nu();
  });
}

// ---- units and dispersion ---------------------------------------------------

casimir_status casimir_ev_to_rad_per_s(double energy_ev, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = casimir::units::ev_to_rad_per_s(energy_ev);
  });
}

casimir_status casimir_matsubara_frequency(int64_t m, double temperature, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = casimir::units::matsubara_frequency(m, temperature);
  });
}

casimir_status casimir_epsilon(const casimir_material* material, double zeta, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = casimir::epsilon_at(model_of(material), zeta);
  });
}

casimir_status casimir_reflection(const casimir_material* material, double zeta, double q,
                                  double* a_tm, double* b_te) {
  return guarded([&] {
    need(a_tm, "a_tm");
    need(b_te, "b_te");
    const auto r = casimir::reflection_coefficients(surface_of(material), zeta, q);
    *a_tm = r.tm;
    *b_te = r.te;
  });
}

casimir_status casimir_zero_mode_reflection(const casimir_material* material, double q,
                                            double* a_tm, double* b_te) {
  return guarded([&] {
    need(a_tm, "a_tm");
    need(b_te, "b_te");
    const auto r = casimir::zero_mode_coefficients(surface_of(material), q);
    *a_tm = r.tm;
    *b_te = r.te;
  });
}

// ---- Lifshitz sums ----------------------------------------------------------

casimir_status casimir_free_energy(const casimir_material* material, double gap,
                                   double temperature, double tol, casimir_series_result* out,
                                   double* terms, size_t terms_capacity,
                                   size_t* terms_written) {
  return guarded([&] {
    need(out, "out");
    const auto r = casimir::free_energy(plates(material, gap, temperature), tol);
    *out = {r.total, r.te_part, r.tm_part, r.tail_estimate, r.quadrature_error, r.m_max};
    if (terms != nullptr) {
      const size_t n = std::min(terms_capacity, r.terms.size());
      for (size_t i = 0; i < n; ++i) terms[i] = r.terms[i];
    }
    if (terms_written != nullptr) *terms_written = r.terms.size();
  });
}

casimir_status casimir_pressure(const casimir_material* material, double gap,
                                double temperature, double tol, casimir_series_result* out) {
  return guarded([&] {
    need(out, "out");
    const auto r = casimir::pressure(plates(material, gap, temperature), tol);
    *out = {r.pressure, r.te_part, r.tm_part, r.tail_estimate, r.quadrature_error, r.m_max};
  });
}

casimir_status casimir_matsubara_term(const casimir_material* material, double gap,
                                      double temperature, int64_t m, double quad_tol,
                                      double* te, double* tm, double* error) {
  return guarded([&] {
    need(te, "te");
    need(tm, "tm");
    const auto r = casimir::matsubara_term(plates(material, gap, temperature), m, quad_tol);
    *te = r.value.te;
    *tm = r.value.tm;
    if (error != nullptr) *error = r.error;
  });
}

casimir_status casimir_zero_temp(const casimir_material* material, double gap, double tol,
                                 casimir_zero_temp_result* out) {
  return guarded([&] {
    need(out, "out");
    const auto r = casimir::free_energy_T0(gap, surface_of(material), tol);
    *out = {r.f0, r.te_part, r.tm_part, r.error_estimate, r.evaluations};
  });
}

// ---- thermal analysis -------------------------------------------------------

casimir_status casimir_thermal_correction(const casimir_material* material, double gap,
                                          double temperature, casimir_thermal_result* out) {
  return guarded([&] {
    need(out, "out");
    const auto r = casimir::thermal_correction(plates(material, gap, temperature));
    *out = {r.total(), r.value.te, r.value.tm, r.total_noise()};
  });
}

casimir_status casimir_entropy(const casimir_material* material, double gap,
                               double temperature, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = casimir::entropy(plates(material, gap, temperature));
  });
}

casimir_status casimir_delta_f_te_numeric(const casimir_material* material, double gap,
                                          double temperature, double tol, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = casimir::delta_f_te_numeric(plates(material, gap, temperature), tol);
  });
}

casimir_status casimir_delta_f_te_samples(const casimir_material* material, double gap,
                                          const double* temperatures, size_t n, double tol,
                                          double* out) {
  return guarded([&] {
    if (n == 0) return;
    need(temperatures, "temperatures");
    need(out, "out");
    const auto s = casimir::delta_f_te_samples(surface_of(material), gap,
                                               std::span<const double>(temperatures, n), tol);
    for (size_t i = 0; i < n; ++i) out[i] = s[i].value;
  });
}

casimir_status casimir_default_fit_grid(double* out, size_t capacity, size_t* count) {
  return guarded([&] {
    const auto g = casimir::default_fit_grid();
    if (out != nullptr) {
      for (size_t i = 0; i < std::min(capacity, g.size()); ++i) out[i] = g[i];
    }
    if (count != nullptr) *count = g.size();
  });
}

// ---- asymptotics ------------------------------------------------------------

casimir_status casimir_asymptotic_coefficients(const casimir_material* material, double gap,
                                               double* c1, double* c2) {
  return guarded([&] {
    need(c1, "c1");
    need(c2, "c2");
    const auto c = casimir::coefficients(drude_of(material), gap);
    *c1 = c.c1;
    *c2 = c.c2;
  });
}

casimir_status casimir_delta_f_te_leading(const casimir_material* material, double temperature,
                                          double* out) {
  return guarded([&] {
    need(out, "out");
    *out = casimir::delta_f_te_leading(drude_of(material), temperature);
  });
}

casimir_status casimir_pade_delta_f(double c1, double c2, double temperature, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = casimir::pade_delta_f({c1, c2}, temperature);
  });
}

casimir_status casimir_pade_entropy(double c1, double c2, double temperature, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = casimir::pade_entropy({c1, c2}, temperature);
  });
}

double casimir_g_prime_zero(void) { return casimir::g_prime_zero(); }

casimir_status casimir_g_prime_zero_integral(double* out) {
  return guarded([&] {
    need(out, "out");
    *out = casimir::g_prime_zero_integral();
  });
}

casimir_status casimir_fit_low_temp(const double* temperatures, const double* delta_f,
                                    size_t n, int basis_terms, casimir_fit_result* out) {
  return guarded([&] {
    need(out, "out");
    casimir::LowTempFitOptions opts;
    if (basis_terms != 0) opts.basis_terms = basis_terms;
    const auto s = samples_from(temperatures, delta_f, n);
    const auto f = casimir::fit_low_temp(s, opts);
    *out = {f.d1, f.d2, f.d3, f.residual_norm, f.condition_number};
  });
}

casimir_status casimir_r_series(double c1, double c2, const double* temperatures,
                                const double* delta_f, size_t n, double* r_out,
                                casimir_r_summary* summary) {
  return guarded([&] {
    const auto s = samples_from(temperatures, delta_f, n);
    const auto r = casimir::r_series({c1, c2}, s);
    if (r_out != nullptr) {
      for (size_t i = 0; i < r.samples.size(); ++i) r_out[i] = r.samples[i].value;
    }
    if (summary != nullptr) {
      *summary = {r.intercept, r.intercept_stderr, r.slope_at_origin, r.correlation,
                  r.fitted_points};
    }
  });
}

// ---- grids and reference data -----------------------------------------------

casimir_status casimir_coefficient_surface(const casimir_material* material,
                                           const double* zeta, size_t nz,
                                           const double* kperp, size_t nk, double* a_out,
                                           double* b_out, int* in_domain) {
  return guarded([&] {
    if (nz > 0) need(zeta, "zeta");
    if (nk > 0) need(kperp, "kperp");
    need(a_out, "a_out");
    need(b_out, "b_out");
    const auto grid = casimir::coefficient_surface(surface_of(material),
                                                   std::span<const double>(zeta, nz),
                                                   std::span<const double>(kperp, nk));
    for (size_t i = 0; i < grid.size(); ++i) {
      a_out[i] = grid[i].coefficients.tm;
      b_out[i] = grid[i].coefficients.te;
      if (in_domain != nullptr) in_domain[i] = grid[i].in_domain ? 1 : 0;
    }
  });
}

casimir_status casimir_classical_pressure(double gap, double temperature, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = casimir::classical_pressure(gap, temperature);
  });
}

casimir_status casimir_classical_limit_ratio(const casimir_material* material, double gap,
                                             double temperature, double tol, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = casimir::classical_limit_check(surface_of(material), gap, temperature, tol);
  });
}

size_t casimir_reference_pressure_count(void) { return casimir::reference_pressures().size(); }

casimir_status casimir_reference_pressure(size_t index, double* gap_um, double* temperature,
                                          double* pressure_mpa) {
  return guarded([&] {
    const auto table = casimir::reference_pressures();
    if (index >= table.size()) {
      throw casimir::InvalidArgument("reference index out of range");
    }
    need(gap_um, "gap_um");
    need(temperature, "temperature");
    need(pressure_mpa, "pressure_mpa");
    *gap_um = table[index].gap_um;
    *temperature = table[index].temperature;
    *pressure_mpa = table[index].pressure_mpa;
  });
}

const char* casimir_reference_source(void) {
  return casimir::reference_pressures_source().data();
}

}  // extern "C"
