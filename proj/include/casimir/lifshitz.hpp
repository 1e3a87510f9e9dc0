#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "casimir/dispersion.hpp"

namespace casimir {

/// Frequency- and momentum-independent squared reflection coefficients.
/// Used to force idealised boundary conditions (A = B = 1 for a perfect
/// conductor, A = 1, B = 0 for the classical TM-only limit).
struct FixedReflectivity {
  double tm;  ///< A
  double te;  ///< B
};

/// What the plates are made of: a permittivity model, or forced coefficients.
using Surface = std::variant<DispersionModel, FixedReflectivity>;

/// Two identical half-spaces separated by a vacuum gap.
struct PlateSystem {
  double gap;          ///< a, m
  double temperature;  ///< T, K
  Surface surface;
};

/// Squared reflection coefficients on the imaginary frequency axis.
struct ReflectionPair {
  double tm;  ///< A = ((s - eps p) / (s + eps p))^2
  double te;  ///< B = ((s - p) / (s + p))^2
};

/// A and B from eps - 1 and p = q c / zeta >= 1, with s - p and s - eps p
/// rewritten so neither cancels when eps -> 1.
ReflectionPair reflection_from_permittivity(double eps_minus_one, double p);

/// Requires zeta > 0 and q >= zeta / c; throws DomainError otherwise.
ReflectionPair reflection_coefficients(const DispersionModel& model, double zeta, double q);
ReflectionPair reflection_coefficients(const Surface& surface, double zeta, double q);

/// Analytic zeta -> 0 limits at fixed q > 0. Drude-type models give A = 1,
/// B = 0; the plasma model keeps B = ((sqrt(q^2 + wp^2/c^2) - q) / (... + q))^2.
ReflectionPair zero_mode_coefficients(const DispersionModel& model, double q);
ReflectionPair zero_mode_coefficients(const Surface& surface, double q);

struct ModeValues {
  double te = 0.0;
  double tm = 0.0;
  double total() const noexcept { return te + tm; }
};

/// A single-frequency q-integral split by polarisation.
struct SpectralIntegral {
  ModeValues value;
  double error = 0.0;      ///< absolute quadrature error estimate (both modes)
  double abs_value = 0.0;  ///< integral of |integrand|, for noise estimates
  std::size_t evaluations = 0;
};

/// Per-frequency quadrature controls.
struct SpectralOptions {
  double rel_tol = 1e-10;
  std::size_t max_evaluations = 10000;  ///< per polarisation
};

/// (1/2 pi) Int_{zeta/c}^inf q ln(1 - r e^{-2 q a}) dq for r = A, B: the
/// Matsubara summand of F / (k_B T). zeta = 0 selects the zero-mode limit.
/// Throws ConvergenceError when the node budget is exhausted.
SpectralIntegral free_energy_spectrum(const Surface& surface, double gap, double zeta,
                                      const SpectralOptions& options = {});

/// (1/pi) Int_{zeta/c}^inf q^2 r e^{-2qa} / (1 - r e^{-2qa}) dq: the summand
/// of -P / (k_B T).
SpectralIntegral pressure_spectrum(const Surface& surface, double gap, double zeta,
                                   const SpectralOptions& options = {});

/// Contribution of one Matsubara index to F, including the half weight at m = 0.
struct MatsubaraTerm {
  ModeValues value;  ///< J/m^2
  double error = 0.0;
  std::size_t evaluations = 0;
  double total() const noexcept { return value.total(); }
};

MatsubaraTerm matsubara_term(const PlateSystem& system, std::int64_t m, double quad_tol);

struct SeriesOptions {
  /// Matsubara indices allowed before a TruncationError.
  std::int64_t max_terms = 2'000'000;
};

struct FreeEnergyResult {
  double total = 0.0;    ///< J/m^2
  double te_part = 0.0;
  double tm_part = 0.0;
  std::vector<double> terms;  ///< per-m contributions (m = 0 half weighted)
  std::int64_t m_max = 0;     ///< last index summed
  double tail_estimate = 0.0;
  double quadrature_error = 0.0;
};

/// Lifshitz free energy per unit area. Sums m = 0.. until the first m > 5
/// with |term_m| < tol |F| / 10 whose geometric tail estimate
/// |term_m| r / (1 - r), r = |term_m / term_{m-1}|, is also below tol |F|.
/// Terms are accumulated in ascending m with compensation.
FreeEnergyResult free_energy(const PlateSystem& system, double tol,
                             const SeriesOptions& options = {});

struct PressureResult {
  double pressure = 0.0;  ///< Pa, negative = attractive
  double te_part = 0.0;
  double tm_part = 0.0;
  std::vector<double> terms;
  std::int64_t m_max = 0;
  double tail_estimate = 0.0;
  double quadrature_error = 0.0;
};

/// P = -dF/da, differentiated under the integral.
PressureResult pressure(const PlateSystem& system, double tol,
                        const SeriesOptions& options = {});

struct SurfaceSample {
  double zeta;
  double kperp;
  bool in_domain;  ///< false when kperp < zeta / c; coefficients are then zero
  ReflectionPair coefficients;
};

/// A and B on a (zeta, k_perp) grid, zeta-major. k_perp plays the role of q,
/// so entries below the light line k_perp < zeta / c are flagged.
std::vector<SurfaceSample> coefficient_surface(const Surface& surface,
                                               std::span<const double> zeta_grid,
                                               std::span<const double> kperp_grid);

}  // namespace casimir
