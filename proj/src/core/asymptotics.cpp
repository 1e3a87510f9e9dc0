#include "casimir/asymptotics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "casimir/constants.hpp"
#include "casimir/error.hpp"
#include "casimir/quadrature.hpp"
#include "reflection_kernel.hpp"

namespace casimir {

namespace {

using units::pi;

const double kTwoLn2Minus1 = 2.0 * std::numbers::ln2 - 1.0;

// Int_{t0}^inf sinh t cosh t ln(1 - e^{-4t - alpha sinh t}) dt, which is
// Int_{sinh t0}^inf x ln(1 - B e^{-alpha x}) dx under x = sinh t.
double te_kernel(double t0, double alpha, double rel_tol, const char* who) {
  auto phi = [alpha](double t) { return 2.0 * t + alpha * std::sinh(t); };
  const double phi0 = phi(t0);
  std::vector<double> pts{t0};
  for (double d = 0.1; d > t0 && d > 1e-12; d *= 0.1) pts.push_back(t0 + d);
  for (double step : {1.0, 5.0, 20.0, 45.0}) {
    double lo = t0, hi = t0 + step / 2.0;
    for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      (phi(mid) - phi0 < step ? lo : hi) = mid;
    }
    pts.push_back(hi);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  auto f = [alpha](double t) {
    const double sh = std::sinh(t);
    return sh * std::cosh(t) * detail::log1mexp(4.0 * t + alpha * sh);
  };
  numerics::QuadratureOptions opt;
  opt.rel_tol = rel_tol;
  opt.max_evaluations = 40000;
  const auto res = numerics::integrate(f, pts, opt);
  if (!res.converged) {
    throw ConvergenceError(std::string(who) + ": quadrature did not converge", res.value,
                           res.error);
  }
  return res.value;
}

}  // namespace

double AsymptoticContext::alpha(double m) const {
  return 2.0 * gap * std::sqrt(2.0 * pi * c_coef * m);
}

AsymptoticContext make_context(const DrudeModel& material, double gap, double temperature) {
  if (!(gap > 0.0) || !std::isfinite(gap)) throw DomainError("make_context: gap must be > 0");
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw DomainError("make_context: temperature must be > 0");
  }
  const double d = material.d_parameter();
  const double c_coef = d * units::k_B * temperature / (units::hbar * units::c * units::c);
  return {d, c_coef, gap, temperature, material.nu(), units::first_matsubara(temperature)};
}

double g_of_m(const AsymptoticContext& ctx, double m, double rel_tol) {
  if (!(m >= 0.0) || !std::isfinite(m)) throw DomainError("g_of_m: m must be >= 0");
  if (m * ctx.zeta1 > ctx.nu / 10.0) {
    throw RegimeError("g_of_m: zeta_m = " + std::to_string(m * ctx.zeta1) +
                      " rad/s exceeds nu/10; the low-frequency expansion does not apply");
  }
  if (m == 0.0) return 0.0;
  const double x0 = std::sqrt(m * ctx.zeta1 / ctx.d);
  return m * te_kernel(std::asinh(x0), ctx.alpha(m), rel_tol, "g_of_m");
}

double g_prime_zero_integral(double rel_tol) {
  return te_kernel(0.0, 0.0, rel_tol, "g_prime_zero_integral");
}

double g_prime_zero() noexcept { return -0.25 * kTwoLn2Minus1; }

double g_prime_zero_finite_difference(const AsymptoticContext& ctx, double h) {
  if (!(h > 0.0)) throw InvalidArgument("g_prime_zero_finite_difference: h must be > 0");
  // g(m)/m = g'(0) + b sqrt(m) + c m ln m + d m + ...; the m ln m piece comes
  // from the lower limit and from the long-range e^{-alpha x} cutoff.
  Eigen::Matrix4d basis;
  Eigen::Vector4d rhs;
  double step = h;
  for (int i = 0; i < 4; ++i, step /= 4.0) {
    basis(i, 0) = 1.0;
    basis(i, 1) = std::sqrt(step);
    basis(i, 2) = step * std::log(step);
    basis(i, 3) = step;
    rhs(i) = g_of_m(ctx, step, 1e-13) / step;
  }
  return basis.fullPivLu().solve(rhs)(0);
}

double delta_f_te_leading(const DrudeModel& material, double temperature) {
  if (!(temperature >= 0.0)) throw DomainError("delta_f_te_leading: T must be >= 0");
  const double kt = units::k_B * temperature;
  const double wp = material.omega_p();
  return wp * wp / (units::c * units::c * units::hbar * material.nu()) * kt * kt *
         kTwoLn2Minus1 / 48.0;
}

AsymptoticCoefficients coefficients(const DrudeModel& material, double gap) {
  if (!(gap > 0.0) || !std::isfinite(gap)) throw DomainError("coefficients: gap must be > 0");
  const double wp = material.omega_p();
  const double kb = units::k_B;
  const double c1 = wp * wp / (units::c * units::c * units::hbar * material.nu()) * kb * kb *
                    kTwoLn2Minus1 / 48.0;
  // C = s^2 T with s^2 = omega_p^2 k / (hbar nu c^2).
  const double s2 = wp * wp * kb / (units::hbar * material.nu() * units::c * units::c);
  const double c2 = 0.204 * 3.0 * gap * std::sqrt(2.0 * pi * s2) / (12.0 * std::abs(g_prime_zero()));
  return {c1, c2};
}

double pade_delta_f(const AsymptoticCoefficients& k, double temperature) {
  if (!(temperature >= 0.0)) throw DomainError("pade_delta_f: T must be >= 0");
  return k.c1 * temperature * temperature / (1.0 + k.c2 * std::sqrt(temperature));
}

double series_delta_f(const AsymptoticCoefficients& k, double temperature) {
  if (!(temperature >= 0.0)) throw DomainError("series_delta_f: T must be >= 0");
  return k.c1 * temperature * temperature * (1.0 - k.c2 * std::sqrt(temperature));
}

double pade_entropy(const AsymptoticCoefficients& k, double temperature) {
  if (!(temperature >= 0.0)) throw DomainError("pade_entropy: T must be >= 0");
  const double r = std::sqrt(temperature);
  const double den = 1.0 + k.c2 * r;
  return -k.c1 * temperature * (2.0 + 1.5 * k.c2 * r) / (den * den);
}

// ---------------------------------------------------------------------------

namespace {

constexpr int kOrder = 16;  // forward differences Delta^1 .. Delta^16

// Coefficients of (ln(1 + x))^j up to x^kOrder, j = 1..7 (odd ones used).
std::array<std::array<double, kOrder + 1>, 8> log_power_coefficients() {
  std::array<std::array<double, kOrder + 1>, 8> c{};
  std::array<double, kOrder + 1> ln{};
  for (int n = 1; n <= kOrder; ++n) ln[n] = (n % 2 ? 1.0 : -1.0) / n;
  c[1] = ln;
  for (int j = 2; j <= 7; ++j) {
    for (int a = 0; a <= kOrder; ++a) {
      if (c[j - 1][a] == 0.0) continue;
      for (int b = 1; a + b <= kOrder; ++b) c[j][a + b] += c[j - 1][a] * ln[b];
    }
  }
  return c;
}

// Odd derivatives g^(1), g^(3), g^(5), g^(7) at 0 from samples g(k h).
std::array<double, 4> odd_derivatives(const std::function<double(double)>& g, double h) {
  static const auto coef = log_power_coefficients();
  std::array<double, kOrder + 1> samples{};
  for (int k = 0; k <= kOrder; ++k) samples[k] = g(k * h);
  // Forward differences Delta^n g(0).
  std::array<double, kOrder + 1> delta{};
  std::array<double, kOrder + 1> row = samples;
  delta[0] = row[0];
  for (int n = 1; n <= kOrder; ++n) {
    for (int k = 0; k + n <= kOrder; ++k) row[k] = row[k + 1] - row[k];
    delta[n] = row[0];
  }
  std::array<double, 4> out{};
  for (int i = 0; i < 4; ++i) {
    const int j = 2 * i + 1;
    numerics::CompensatedSum s;
    for (int n = j; n <= kOrder; ++n) s += coef[j][n] * delta[n];
    out[i] = s.value() / std::pow(h, j);
  }
  return out;
}

double correction_from(const std::array<double, 4>& d, int terms) {
  // -B_{2k} / (2k)! for k = 1..4
  static constexpr std::array<double, 4> w = {-1.0 / 12.0, 1.0 / 720.0, -1.0 / 30240.0,
                                              1.0 / 1209600.0};
  double s = 0.0;
  for (int i = 0; i < terms; ++i) s += w[i] * d[i];
  return s;
}

}  // namespace

double euler_maclaurin_sum(const std::function<double(double)>& g,
                           const EulerMaclaurinOptions& options) {
  if (options.n_derivatives < 1 || options.n_derivatives > 4) {
    throw InvalidArgument("euler_maclaurin_sum: n_derivatives must be 1..4");
  }
  if (!(options.step > 0.0)) throw InvalidArgument("euler_maclaurin_sum: step must be > 0");
  const double h = options.step;
  const auto coarse = odd_derivatives(g, 2.0 * h);
  const auto fine = odd_derivatives(g, h);
  const double a = correction_from(coarse, options.n_derivatives);
  const double b = correction_from(fine, options.n_derivatives);
  double scale = 0.0;
  for (int k = 0; k <= kOrder; ++k) scale = std::max(scale, std::abs(g(k * h)));
  const double limit = 1e-5 * std::abs(b) + 1e-9 * scale;
  if (!std::isfinite(a) || !std::isfinite(b) || std::abs(a - b) > limit) {
    throw ConvergenceError(
        "euler_maclaurin_sum: endpoint derivatives of g are not stable under step "
        "refinement (g not smooth at 0, or step too coarse)",
        b, std::abs(a - b));
  }
  return b;
}

}  // namespace casimir
