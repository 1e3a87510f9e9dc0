#include "casimir/zero_temp.hpp"

#include <cmath>
#include <string>

#include "casimir/constants.hpp"
#include "casimir/error.hpp"
#include "casimir/quadrature.hpp"
#include "reflection_kernel.hpp"

namespace casimir {

namespace {

// Outer cutoff in xi = 2 a zeta / c and inner cutoff in t = y - xi. Beyond
// them every log term is bounded by e^{-y}, so the dropped part is at most
// 2 (X + 2) e^{-X} in the dimensionless integral.
constexpr double kXiMax = 50.0;
constexpr double kTMax = 50.0;

}  // namespace

ZeroTempResult free_energy_T0(double gap, const Surface& surface, double tol,
                              std::size_t max_evaluations) {
  if (!(gap > 0.0) || !std::isfinite(gap)) throw DomainError("free_energy_T0: gap must be > 0");
  if (!(tol > 0.0 && tol <= 1e-4)) {
    throw InvalidArgument("free_energy_T0: tol must lie in (0, 1e-4]");
  }

  const double c = units::c;
  std::function<numerics::Vec2(double, double)> integrand;

  if (const auto* fixed = std::get_if<FixedReflectivity>(&surface)) {
    if (!(fixed->tm >= 0.0 && fixed->tm <= 1.0) || !(fixed->te >= 0.0 && fixed->te <= 1.0)) {
      throw InvalidArgument("FixedReflectivity: A and B must lie in [0, 1]");
    }
    const detail::Coef tm{fixed->tm, 1.0 - fixed->tm};
    const detail::Coef te{fixed->te, 1.0 - fixed->te};
    integrand = [tm, te](double v, double t) -> numerics::Vec2 {
      const double jac = std::exp(v);
      const double y = std::expm1(v) + t;
      return {jac * y * detail::log_one_minus(te, y), jac * y * detail::log_one_minus(tm, y)};
    };
  } else {
    const DispersionModel model = std::get<DispersionModel>(surface);
    const bool plasma = std::holds_alternative<PlasmaModel>(model);
    const double big_k = plasma ? 2.0 * gap * std::get<PlasmaModel>(model).omega_p() / c : 0.0;
    integrand = [model, plasma, big_k, gap, c](double v, double t) -> numerics::Vec2 {
      const double jac = std::exp(v);
      const double xi = std::expm1(v);
      const double y = xi + t;
      detail::Coef tm, te;
      if (xi > 0.0) {
        const double chi = eps_minus_one(model, xi * c / (2.0 * gap));
        const auto pair = detail::coefficients_from_permittivity(chi, y / xi);
        tm = pair.tm;
        te = pair.te;
      } else {
        tm = {1.0, 0.0};
        te = plasma ? detail::plasma_zero_mode_te(big_k, y) : detail::Coef{0.0, 1.0};
      }
      return {jac * y * detail::log_one_minus(te, y), jac * y * detail::log_one_minus(tm, y)};
    };
  }

  numerics::CubatureOptions opt;
  opt.rel_tol = 0.5 * tol;
  opt.max_evaluations = max_evaluations;
  const numerics::Rectangle box{0.0, std::log1p(kXiMax), 0.0, kTMax};
  const auto res = numerics::integrate_2d(integrand, box, opt);

  const double prefactor = units::hbar * c / (32.0 * units::pi * units::pi * gap * gap * gap);
  const double cutoff = 2.0 * (kXiMax + 2.0) * std::exp(-kXiMax) +
                        2.0 * (kTMax + 2.0) * std::exp(-kTMax) * kXiMax;
  if (!res.converged) {
    throw ConvergenceError("free_energy_T0: cubature did not converge within " +
                               std::to_string(max_evaluations) + " evaluations",
                           prefactor * res.total(), prefactor * (res.total_error() + cutoff));
  }
  ZeroTempResult out;
  out.te_part = prefactor * res.value[0];
  out.tm_part = prefactor * res.value[1];
  out.f0 = prefactor * res.total();
  out.error_estimate = prefactor * (res.total_error() + cutoff);
  out.evaluations = res.evaluations;
  return out;
}

}  // namespace casimir
