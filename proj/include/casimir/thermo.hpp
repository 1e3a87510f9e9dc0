#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "casimir/asymptotics.hpp"
#include "casimir/lifshitz.hpp"

namespace casimir {

struct ThermalOptions {
  double window_center = 40.0;  ///< u_s, in units of the first Matsubara index
  double window_width = 4.0;    ///< s
  /// Relative tolerance for every spectral integral and for the continuous
  /// integral over the Matsubara index.
  double rel_tol = 1e-13;
};

/// F(T) - F(0) split by polarisation, J/m^2.
struct ThermalCorrection {
  ModeValues value;
  ModeValues noise;  ///< estimated rounding and quadrature noise per mode
  std::int64_t terms = 0;
  double total() const noexcept { return value.total(); }
  double total_noise() const noexcept { return noise.total(); }
};

/// F(T) - F(0) = k T [Sum'_m h(m) - Int_0^inf h(u) du] with h(u) the q-integral
/// at zeta = u zeta_1. Both the sum and the integral are taken against the
/// smooth window w(u) = erfc((u - u_s) / s) / 2 and use the same spectral
/// evaluator, so the large common part cancels before rounding. The dropped
/// (1 - w) h part is smooth and vanishes at the origin to all orders, hence
/// its sum and integral agree to far below double precision.
ThermalCorrection thermal_correction(const PlateSystem& system,
                                     const ThermalOptions& options = {});

/// TE part of thermal_correction for Drude-type media (Drude or a table with a
/// Drude tail). tol in (0, 1e-8] is the spectral quadrature tolerance.
/// Throws RegimeError when zeta_1 > nu / 10, InvalidArgument for media with a
/// TE zero mode, PrecisionError when the result is not above its noise.
double delta_f_te_numeric(const PlateSystem& system, double tol = 1e-13);

struct TemperatureSample {
  double temperature;  ///< K
  double value;        ///< J/m^2
};

/// delta_f_te_numeric at each temperature (evaluated concurrently, returned
/// in input order).
std::vector<TemperatureSample> delta_f_te_samples(const Surface& surface, double gap,
                                                  std::span<const double> temperatures,
                                                  double tol = 1e-13);

/// 12 log-spaced temperatures in [2e-3, 6e-2] K.
std::vector<double> default_fit_grid();

struct LowTempFitOptions {
  /// Basis T^2, T^{5/2}, ... with this many terms (3..6). Terms past T^3
  /// absorb the higher orders of the expansion.
  int basis_terms = 5;
  double max_condition = 1e12;
  double max_residual = 1e-3;  ///< weighted RMS relative residual
};

struct LowTempFit {
  double d1 = 0.0;  ///< J/(m^2 K^2)
  double d2 = 0.0;  ///< K^{-1/2}
  double d3 = 0.0;  ///< K^{-1}
  std::vector<double> coefficients;  ///< raw b_k of sum_k b_k T^{2 + k/2}
  double residual_norm = 0.0;
  double condition_number = 0.0;
  std::vector<TemperatureSample> grid;
};

/// Weighted least squares of dF = D1 (T^2 - D2 T^{5/2} + D3 T^3 + ...) with
/// weights 1/T^4, solved by SVD in tau = sqrt(T / T_max). Needs at least 8
/// strictly increasing samples spanning a decade (InvalidArgument otherwise);
/// FitError when ill-conditioned or when the residual exceeds the threshold.
LowTempFit fit_low_temp(std::span<const TemperatureSample> samples,
                        const LowTempFitOptions& options = {});

struct RSeries {
  std::vector<TemperatureSample> samples;  ///< (T, R)
  double intercept = 0.0;
  double intercept_stderr = 0.0;
  double slope_at_origin = 0.0;  ///< 1/K
  double correlation = 0.0;      ///< of R vs T on the fitted range
  std::size_t fitted_points = 0;
};

/// R = (dF_th - dF_num) / dF_th with dF_th from the Pade form, plus a straight
/// line fitted to R vs T over the lowest decade of the grid.
RSeries r_series(const AsymptoticCoefficients& coeffs,
                 std::span<const TemperatureSample> numeric);

/// S = -dF/dT by central differences of thermal_correction with step
/// h = max(T/10, min(1e-4 K, T/2)) and one Richardson step (h, h/2).
/// Throws PrecisionError when the difference is below its noise.
double entropy(const PlateSystem& system, const ThermalOptions& options = {});

/// -zeta(3) k T / (8 pi a^3).
double classical_pressure(double gap, double temperature);

/// pressure / classical_pressure. Requires 2 pi k T a / (hbar c) >= 5
/// (RegimeError otherwise).
double classical_limit_check(const Surface& surface, double gap, double temperature,
                             double tol = 1e-8);

}  // namespace casimir
