#include "casimir/thermo.hpp"

#include <algorithm>
#include <array>
#include <exception>
#include <limits>
#include <cmath>
#include <future>
#include <string>
#include <thread>
#include <unordered_map>

#include <Eigen/Dense>

#include "casimir/constants.hpp"
#include "casimir/error.hpp"
#include "casimir/quadrature.hpp"

namespace casimir {

namespace {

constexpr double kEps = 2.220446049250313e-16;

void check_system(const PlateSystem& system, const char* who) {
  if (!(system.gap > 0.0) || !std::isfinite(system.gap)) {
    throw DomainError(std::string(who) + ": gap must be > 0");
  }
  if (!(system.temperature > 0.0) || !std::isfinite(system.temperature)) {
    throw DomainError(std::string(who) + ": temperature must be > 0");
  }
}

// Runs fn(i) for i in [0, n) on up to hardware_concurrency threads.
template <class Fn>
void parallel_for(std::size_t n, Fn fn) {
  const std::size_t workers =
      std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::future<void>> jobs;
  for (std::size_t w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < n; i += workers) fn(i);
    }));
  }
  for (auto& j : jobs) j.get();
}

}  // namespace

ThermalCorrection thermal_correction(const PlateSystem& system, const ThermalOptions& options) {
  check_system(system, "thermal_correction");
  if (!(options.window_width > 0.0) || !(options.window_center > 4.0 * options.window_width)) {
    throw InvalidArgument("thermal_correction: need width > 0 and center > 4 width");
  }
  if (!(options.rel_tol > 0.0 && options.rel_tol <= 1e-6)) {
    throw InvalidArgument("thermal_correction: rel_tol must lie in (0, 1e-6]");
  }
  const double zeta1 = units::first_matsubara(system.temperature);
  const double us = options.window_center;
  const double s = options.window_width;
  const auto m_last = static_cast<std::int64_t>(std::ceil(us + 8.0 * s));
  auto window = [us, s](double u) { return 0.5 * std::erfc((u - us) / s); };

  SpectralOptions spec;
  spec.rel_tol = options.rel_tol;
  spec.max_evaluations = 40000;
  auto h_of_u = [&](double u) {
    return free_energy_spectrum(system.surface, system.gap, u * zeta1, spec);
  };

  // Discrete side.
  std::vector<SpectralIntegral> terms(static_cast<std::size_t>(m_last) + 1);
  std::vector<std::exception_ptr> failures(terms.size());
  parallel_for(terms.size(), [&](std::size_t i) {
    try {
      terms[i] = h_of_u(static_cast<double>(i));
    } catch (...) {
      failures[i] = std::current_exception();
    }
  });
  numerics::CompensatedSum sum_te, sum_tm;
  double abs_te = 0.0, abs_tm = 0.0, err_sum = 0.0;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (failures[i]) std::rethrow_exception(failures[i]);
    const double w = window(static_cast<double>(i)) * (i == 0 ? 0.5 : 1.0);
    sum_te += w * terms[i].value.te;
    sum_tm += w * terms[i].value.tm;
    abs_te += w * std::abs(terms[i].value.te);
    abs_tm += w * std::abs(terms[i].value.tm);
    err_sum += w * terms[i].error;
  }

  // Continuous side on u = v^2, which straightens the sqrt(u) behaviour of h
  // near the origin. Nodes are shared between the two modes through a cache.
  std::unordered_map<double, ModeValues> cache;
  auto integrand = [&](double v, bool te) {
    const double u = v * v;
    auto it = cache.find(u);
    if (it == cache.end()) it = cache.emplace(u, h_of_u(u).value).first;
    const double h = te ? it->second.te : it->second.tm;
    return 2.0 * v * window(u) * h;
  };
  std::vector<double> pts;
  for (double u : {0.0, 0.01, 0.1, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 24.0, 32.0, 40.0, 48.0,
                   56.0, 64.0}) {
    if (u < static_cast<double>(m_last)) pts.push_back(std::sqrt(u));
  }
  pts.push_back(std::sqrt(static_cast<double>(m_last)));
  numerics::QuadratureOptions qopt;
  qopt.rel_tol = options.rel_tol;
  qopt.max_evaluations = 400000;
  const auto int_te = numerics::integrate([&](double v) { return integrand(v, true); }, pts, qopt);
  const auto int_tm = numerics::integrate([&](double v) { return integrand(v, false); }, pts, qopt);
  if (!int_te.converged || !int_tm.converged) {
    const double kt = units::k_B * system.temperature;
    throw ConvergenceError("thermal_correction: index integral did not converge",
                           kt * (sum_te.value() + sum_tm.value() - int_te.value - int_tm.value),
                           kt * (int_te.error + int_tm.error));
  }

  const double kt = units::k_B * system.temperature;
  ThermalCorrection out;
  out.value.te = kt * (sum_te.value() - int_te.value);
  out.value.tm = kt * (sum_tm.value() - int_tm.value);
  const double floor_rel = std::max(options.rel_tol, 64.0 * kEps);
  const double share_te = abs_te / std::max(abs_te + abs_tm, 1e-300);
  out.noise.te = kt * (floor_rel * (abs_te + int_te.abs_value) + int_te.error + share_te * err_sum);
  out.noise.tm =
      kt * (floor_rel * (abs_tm + int_tm.abs_value) + int_tm.error + (1.0 - share_te) * err_sum);
  out.terms = m_last + 1;
  return out;
}

double delta_f_te_numeric(const PlateSystem& system, double tol) {
  check_system(system, "delta_f_te_numeric");
  if (!(tol > 0.0 && tol <= 1e-8)) {
    throw InvalidArgument("delta_f_te_numeric: tol must lie in (0, 1e-8]");
  }
  const auto* model = std::get_if<DispersionModel>(&system.surface);
  if (!model || !has_vanishing_te_zero_mode(*model)) {
    throw InvalidArgument("delta_f_te_numeric: requires a Drude-type medium (no TE zero mode)");
  }
  const double nu = std::holds_alternative<DrudeModel>(*model)
                        ? std::get<DrudeModel>(*model).nu()
                        : std::get<TabulatedPermittivity>(*model).low_freq_extrapolator().nu();
  const double zeta1 = units::first_matsubara(system.temperature);
  if (zeta1 > nu / 10.0) {
    throw RegimeError("delta_f_te_numeric: zeta_1 = " + std::to_string(zeta1) +
                      " rad/s exceeds nu/10; outside the low-temperature regime");
  }
  ThermalOptions opt;
  opt.rel_tol = std::max(tol, 2e-14);
  const ThermalCorrection r = thermal_correction(system, opt);
  if (!(std::abs(r.value.te) > r.noise.te)) {
    throw PrecisionError("delta_f_te_numeric: TE shift is not resolved above its noise",
                         r.value.te, r.noise.te);
  }
  return r.value.te;
}

std::vector<TemperatureSample> delta_f_te_samples(const Surface& surface, double gap,
                                                  std::span<const double> temperatures,
                                                  double tol) {
  std::vector<TemperatureSample> out(temperatures.size());
  std::vector<std::exception_ptr> failures(temperatures.size());
  parallel_for(temperatures.size(), [&](std::size_t i) {
    try {
      out[i] = {temperatures[i],
                delta_f_te_numeric(PlateSystem{gap, temperatures[i], surface}, tol)};
    } catch (...) {
      failures[i] = std::current_exception();
    }
  });
  for (auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
  return out;
}

std::vector<double> default_fit_grid() {
  constexpr int n = 12;
  const double lo = std::log(2e-3), hi = std::log(6e-2);
  std::vector<double> grid(n);
  for (int i = 0; i < n; ++i) grid[i] = std::exp(lo + (hi - lo) * i / (n - 1));
  grid.front() = 2e-3;
  grid.back() = 6e-2;
  return grid;
}

LowTempFit fit_low_temp(std::span<const TemperatureSample> samples,
                        const LowTempFitOptions& options) {
  const std::size_t n = samples.size();
  if (n < 8) {
    throw InvalidArgument("fit_low_temp: need at least 8 samples, got " + std::to_string(n));
  }
  if (options.basis_terms < 3 || options.basis_terms > 6) {
    throw InvalidArgument("fit_low_temp: basis_terms must be 3..6");
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = samples[i];
    if (!(p.temperature > 0.0) || !std::isfinite(p.value) ||
        (i > 0 && !(p.temperature > samples[i - 1].temperature))) {
      throw InvalidArgument("fit_low_temp: temperatures must be positive and strictly increasing");
    }
  }
  const double t_max = samples.back().temperature;
  if (t_max < 10.0 * samples.front().temperature * (1.0 - 1e-12)) {
    throw InvalidArgument("fit_low_temp: samples must span at least one decade in T");
  }

  // With weights 1/T^4 the problem becomes a polynomial fit of dF / T^2 in tau.
  const int k = options.basis_terms;
  Eigen::MatrixXd a(n, k);
  Eigen::VectorXd y(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = samples[i].temperature;
    const double tau = std::sqrt(t / t_max);
    double p = 1.0;
    for (int j = 0; j < k; ++j, p *= tau) a(static_cast<Eigen::Index>(i), j) = p;
    y(static_cast<Eigen::Index>(i)) = samples[i].value / (t * t);
  }
  // Column scaling keeps the SVD condition number meaningful.
  const double y_scale = y.cwiseAbs().maxCoeff();
  if (!(y_scale > 0.0)) throw FitError("fit_low_temp: all samples are zero", 0.0);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double cond = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1)
                                              : std::numeric_limits<double>::infinity();
  if (!(cond <= options.max_condition)) {
    throw FitError("fit_low_temp: design matrix is ill-conditioned (condition number " +
                       std::to_string(cond) + ")",
                   cond);
  }
  const Eigen::VectorXd beta = svd.solve(y / y_scale) * y_scale;
  const Eigen::VectorXd resid = y - a * beta;
  const double rms = std::sqrt(resid.squaredNorm() / static_cast<double>(n));
  const double mean_abs = y.cwiseAbs().mean();

  LowTempFit fit;
  fit.condition_number = cond;
  fit.residual_norm = rms / mean_abs;
  fit.coefficients.resize(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) fit.coefficients[j] = beta(j) / std::pow(t_max, 0.5 * j);
  fit.d1 = fit.coefficients[0];
  fit.d2 = -fit.coefficients[1] / fit.d1;
  fit.d3 = fit.coefficients[2] / fit.d1;
  fit.grid.assign(samples.begin(), samples.end());
  if (!(fit.residual_norm <= options.max_residual)) {
    throw FitError("fit_low_temp: weighted residual " + std::to_string(fit.residual_norm) +
                       " exceeds the threshold",
                   cond);
  }
  return fit;
}

RSeries r_series(const AsymptoticCoefficients& coeffs,
                 std::span<const TemperatureSample> numeric) {
  if (numeric.size() < 3) throw InvalidArgument("r_series: need at least 3 samples");
  RSeries out;
  for (std::size_t i = 0; i < numeric.size(); ++i) {
    const auto& p = numeric[i];
    if (!(p.temperature > 0.0) || (i > 0 && !(p.temperature > numeric[i - 1].temperature))) {
      throw InvalidArgument("r_series: temperatures must be positive and strictly increasing");
    }
    const double th = pade_delta_f(coeffs, p.temperature);
    out.samples.push_back({p.temperature, (th - p.value) / th});
  }
  const double t_lo = out.samples.front().temperature;
  std::vector<TemperatureSample> low;
  for (const auto& p : out.samples) {
    if (p.temperature <= 10.0 * t_lo * (1.0 + 1e-12)) low.push_back(p);
  }
  if (low.size() < 3) {
    throw InvalidArgument("r_series: need at least 3 samples in the lowest decade");
  }
  const double m = static_cast<double>(low.size());
  double sx = 0.0, sy = 0.0;
  for (const auto& p : low) {
    sx += p.temperature;
    sy += p.value;
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0.0, syy = 0.0, sxy = 0.0, sx2 = 0.0;
  for (const auto& p : low) {
    const double dx = p.temperature - mx, dy = p.value - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
    sx2 += p.temperature * p.temperature;
  }
  out.slope_at_origin = sxy / sxx;
  out.intercept = my - out.slope_at_origin * mx;
  double ssr = 0.0;
  for (const auto& p : low) {
    const double r = p.value - (out.intercept + out.slope_at_origin * p.temperature);
    ssr += r * r;
  }
  const double s2 = low.size() > 2 ? ssr / (m - 2.0) : 0.0;
  out.intercept_stderr = std::sqrt(s2 * sx2 / (m * sxx));
  out.correlation = syy > 0.0 ? sxy / std::sqrt(sxx * syy) : 1.0;
  out.fitted_points = low.size();
  return out;
}

double entropy(const PlateSystem& system, const ThermalOptions& options) {
  check_system(system, "entropy");
  const double t = system.temperature;
  const double h = std::max(t / 10.0, std::min(1e-4, t / 2.0));
  const std::array<double, 4> offsets{h, -h, 0.5 * h, -0.5 * h};
  std::array<ThermalCorrection, 4> f;
  std::array<std::exception_ptr, 4> failures;
  for (std::size_t i = 0; i < 4; ++i) {
    try {
      PlateSystem s = system;
      s.temperature = t + offsets[i];
      f[i] = thermal_correction(s, options);
    } catch (...) {
      failures[i] = std::current_exception();
    }
  }
  for (auto& e : failures) {
    if (e) std::rethrow_exception(e);
  }
  const double d_h = (f[0].total() - f[1].total()) / (2.0 * h);
  const double d_h2 = (f[2].total() - f[3].total()) / h;
  const double s = -(4.0 * d_h2 - d_h) / 3.0;
  const double noise = (4.0 * (f[2].total_noise() + f[3].total_noise()) / h +
                        (f[0].total_noise() + f[1].total_noise()) / (2.0 * h)) /
                       3.0;
  if (!(std::abs(s) > 3.0 * noise)) {
    throw PrecisionError(
        "entropy: finite difference is dominated by noise; raise T or tighten the tolerance", s,
        noise);
  }
  return s;
}

double classical_pressure(double gap, double temperature) {
  if (!(gap > 0.0)) throw DomainError("classical_pressure: gap must be > 0");
  if (!(temperature > 0.0)) throw DomainError("classical_pressure: T must be > 0");
  return -units::zeta3 * units::k_B * temperature / (8.0 * units::pi * gap * gap * gap);
}

double classical_limit_check(const Surface& surface, double gap, double temperature,
                             double tol) {
  const double x = 2.0 * units::pi * units::k_B * temperature * gap / (units::hbar * units::c);
  if (!(x >= 5.0 * (1.0 - 1e-9))) {
    throw RegimeError("classical_limit_check: 2 pi k T a / (hbar c) = " + std::to_string(x) +
                      " < 5; not in the classical regime");
  }
  const PressureResult p = pressure(PlateSystem{gap, temperature, surface}, tol);
  return p.pressure / classical_pressure(gap, temperature);
}

}  // namespace casimir
