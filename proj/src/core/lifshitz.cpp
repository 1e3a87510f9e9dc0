#include "casimir/lifshitz.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <future>
#include <optional>
#include <string>
#include <thread>

#include "casimir/constants.hpp"
#include "casimir/error.hpp"
#include "casimir/quadrature.hpp"
#include "reflection_kernel.hpp"

namespace casimir {

namespace {

using units::pi;

using detail::Coef;
using detail::log_one_minus;
using detail::log1mexp;
using detail::occupation;

std::vector<double> sorted_unique(std::vector<double> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](double a, double b) { return b <= a * (1.0 + 1e-12) + 1e-300; }),
            pts.end());
  return pts;
}

void check_fixed(const FixedReflectivity& f) {
  if (!(f.tm >= 0.0 && f.tm <= 1.0) || !(f.te >= 0.0 && f.te <= 1.0)) {
    throw InvalidArgument("FixedReflectivity: A and B must lie in [0, 1]");
  }
}

void check_gap(double gap) {
  if (!(gap > 0.0) || !std::isfinite(gap)) {
    throw DomainError("gap must be finite and > 0");
  }
}

// Breakpoints start + d for d = 0.1, 0.01, ... down to the scale `floor`,
// then start + {1, 5, 20, 45}. The fine ones resolve the near-logarithmic
// edge that appears when the lower limit sits close to a singular point.
std::vector<double> y_breakpoints(double start, double floor) {
  std::vector<double> pts{start};
  for (double d = 0.1; d > floor && d > 1e-12; d *= 0.1) pts.push_back(start + d);
  for (double d : {1.0, 5.0, 20.0, 45.0}) pts.push_back(start + d);
  return sorted_unique(std::move(pts));
}

struct PanelIntegral {
  double value = 0.0;
  double error = 0.0;
  double abs_value = 0.0;
  std::size_t evaluations = 0;
};

PanelIntegral run_quadrature(const std::function<double(double)>& f,
                             const std::vector<double>& pts, double rel_tol,
                             std::size_t budget, const char* what) {
  numerics::QuadratureOptions opt;
  opt.rel_tol = rel_tol;
  opt.max_evaluations = budget;
  const auto res = numerics::integrate(f, pts, opt);
  if (!res.converged) {
    throw ConvergenceError(std::string(what) + ": quadrature did not converge within " +
                               std::to_string(budget) + " evaluations",
                           res.value, res.error);
  }
  return {res.value, res.error, res.abs_value, res.evaluations};
}

// Adds the exponential continuation past the last breakpoint: f(b) / rate,
// with the local decay rate estimated from f(b - h) and f(b), h capped at
// half the last panel.
void add_tail(PanelIntegral& p, const std::function<double(double)>& f,
              const std::vector<double>& pts, double h) {
  const double b = pts.back();
  h = std::min(h, 0.5 * (b - pts[pts.size() - 2]));
  const double fb = f(b);
  const double fa = f(b - h);
  p.evaluations += 2;
  if (fb == 0.0 || fa == 0.0 || std::abs(fb) >= std::abs(fa)) return;
  const double rate = std::log(fa / fb) / h;
  const double tail = fb / rate;
  p.value += tail;
  p.abs_value += std::abs(tail);
  p.error += std::abs(tail);
}

enum class Kind { free_energy, pressure };

constexpr double kUnderflowY = 650.0;

// Mode integral on y = 2 q a with a y-dependent coefficient.
template <class CoefOfY>
PanelIntegral y_integral(Kind kind, double y0, double floor, CoefOfY coef, double rel_tol,
                         std::size_t budget, const char* what) {
  std::function<double(double)> f;
  if (kind == Kind::free_energy) {
    f = [&](double y) { return y * log_one_minus(coef(y), y); };
  } else {
    f = [&](double y) { return y * y * occupation(coef(y), y); };
  }
  const auto pts = y_breakpoints(y0, floor);
  PanelIntegral p = run_quadrature(f, pts, rel_tol, budget, what);
  add_tail(p, f, pts, 0.5);
  return p;
}

// TE mode of a dispersive medium via p = sqrt(eps - 1) sinh(theta), which
// turns B into e^{-4 theta} exactly. Breakpoints sit where the net decay
// exponent g theta + alpha sinh(theta) has risen by fixed steps; g is 4 minus
// the growth rate of the Jacobian (2 for the free energy, 1 for the pressure).
PanelIntegral te_theta_integral(Kind kind, double theta0, double alpha, double rel_tol,
                                std::size_t budget, const char* what) {
  const double growth = kind == Kind::free_energy ? 2.0 : 1.0;  // 4 - kappa
  auto phi = [&](double t) { return growth * t + alpha * std::sinh(t); };
  const double phi0 = phi(theta0);
  std::vector<double> pts{theta0};
  for (double d = 0.1; d > theta0 && d > 1e-12; d *= 0.1) pts.push_back(theta0 + d);
  for (double step : {1.0, 5.0, 20.0, 45.0}) {
    double lo = theta0, hi = theta0 + step / growth;
    for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      (phi(mid) - phi0 < step ? lo : hi) = mid;
    }
    pts.push_back(hi);
  }
  pts = sorted_unique(std::move(pts));
  std::function<double(double)> f;
  if (kind == Kind::free_energy) {
    f = [&](double t) {
      return std::sinh(t) * std::cosh(t) * log1mexp(4.0 * t + alpha * std::sinh(t));
    };
  } else {
    f = [&](double t) {
      const double sh = std::sinh(t);
      return sh * sh * std::cosh(t) / std::expm1(4.0 * t + alpha * sh);
    };
  }
  PanelIntegral p = run_quadrature(f, pts, rel_tol, budget, what);
  add_tail(p, f, pts, 0.25);
  return p;
}

SpectralIntegral spectrum(Kind kind, const Surface& surface, double gap, double zeta,
                          const SpectralOptions& options) {
  check_gap(gap);
  if (!(zeta >= 0.0) || !std::isfinite(zeta)) {
    throw DomainError("spectral integral: zeta must be finite and >= 0");
  }
  if (!(options.rel_tol > 0.0)) throw InvalidArgument("spectral integral: rel_tol must be > 0");
  const char* what = kind == Kind::free_energy ? "free-energy integrand" : "pressure integrand";
  const double c = units::c;
  // q dq = y dy / (4 a^2) and q^2 dq = y^2 dy / (8 a^3), times 1/(2 pi) or 1/pi.
  const double y_scale = kind == Kind::free_energy ? 1.0 / (8.0 * pi * gap * gap)
                                                   : 1.0 / (8.0 * pi * gap * gap * gap);
  const double y0 = 2.0 * gap * zeta / c;
  const std::size_t budget = options.max_evaluations;

  const FixedReflectivity* fixed = std::get_if<FixedReflectivity>(&surface);
  const DispersionModel* model = std::get_if<DispersionModel>(&surface);
  if (fixed) check_fixed(*fixed);

  SpectralIntegral out;
  // Past this point every integrand is below e^{-650} y^2 and rounds into the
  // subnormal range, where relative error control is meaningless.
  if (y0 > kUnderflowY) return out;
  auto accumulate = [&](double& slot, const PanelIntegral& p, double scale) {
    slot = scale * p.value;
    out.error += std::abs(scale) * p.error;
    out.abs_value += std::abs(scale) * p.abs_value;
    out.evaluations += p.evaluations;
  };

  // TM
  {
    std::optional<Coef> constant;
    if (fixed) {
      constant = Coef{fixed->tm, 1.0 - fixed->tm};
    } else if (zeta == 0.0) {
      constant = Coef{1.0, 0.0};
    }
    if (constant) {
      if (constant->r > 0.0) {
        const Coef k = *constant;
        accumulate(out.value.tm,
                   y_integral(kind, y0, y0, [k](double) { return k; }, options.rel_tol,
                              budget, what),
                   y_scale);
      }
    } else {
      const double chi = eps_minus_one(*model, zeta);
      auto coef = [chi, y0](double y) {
        return detail::coefficients_from_permittivity(chi, std::max(1.0, y / y0)).tm;
      };
      // 1 - A near the light line is ~ 4 / sqrt(chi) for a good conductor.
      const double floor = 0.1 * std::min(y0, 4.0 / std::sqrt(1.0 + chi));
      accumulate(out.value.tm,
                 y_integral(kind, y0, floor, coef, options.rel_tol, budget, what), y_scale);
    }
  }

  // TE
  if (fixed) {
    if (fixed->te > 0.0) {
      const Coef k{fixed->te, 1.0 - fixed->te};
      accumulate(out.value.te,
                 y_integral(kind, y0, y0, [k](double) { return k; }, options.rel_tol, budget,
                            what),
                 y_scale);
    }
  } else if (zeta == 0.0) {
    if (const auto* plasma = std::get_if<PlasmaModel>(model)) {
      const double big_k = 2.0 * gap * plasma->omega_p() / c;
      auto coef = [big_k](double y) { return detail::plasma_zero_mode_te(big_k, y); };
      accumulate(out.value.te,
                 y_integral(kind, 0.0, 1e-8, coef, options.rel_tol, budget, what), y_scale);
    }
    // Drude-type media: B vanishes identically at zero frequency.
  } else {
    const double chi = eps_minus_one(*model, zeta);
    const double root = std::sqrt(chi);
    const double theta0 = std::asinh(1.0 / root);
    const double alpha = 2.0 * gap * zeta * root / c;
    const double zr = zeta * root / c;
    const double scale = kind == Kind::free_energy ? zr * zr / (2.0 * pi) : zr * zr * zr / pi;
    accumulate(out.value.te,
               te_theta_integral(kind, theta0, alpha, options.rel_tol, budget, what), scale);
  }
  return out;
}

// ---------------------------------------------------------------------------

struct SeriesOutcome {
  numerics::CompensatedSum te, tm, total;
  std::vector<double> terms;  // w_m * (H_te + H_tm), no k_B T factor
  std::int64_t m_max = 0;
  double tail = 0.0;
  double quad_error = 0.0;
};

void check_series_args(const PlateSystem& system, double tol, const char* who) {
  check_gap(system.gap);
  if (!(system.temperature > 0.0) || !std::isfinite(system.temperature)) {
    throw DomainError(std::string(who) + ": temperature must be > 0 (use the T = 0 routine)");
  }
  if (!(tol > 0.0 && tol <= 1e-4)) {
    throw InvalidArgument(std::string(who) + ": tol must lie in (0, 1e-4]");
  }
  if (const auto* f = std::get_if<FixedReflectivity>(&system.surface)) check_fixed(*f);
}

SeriesOutcome sum_series(Kind kind, const PlateSystem& system, double tol,
                         const SeriesOptions& options, const char* who) {
  const double zeta1 = units::first_matsubara(system.temperature);
  SpectralOptions spec;
  spec.rel_tol = tol / 10.0;

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = std::min<std::size_t>(hw, 16);

  SeriesOutcome out;
  double prev_abs = 0.0;
  std::int64_t m0 = 0;
  std::size_t chunk = 8;

  struct Slot {
    SpectralIntegral value;
    std::exception_ptr error;
  };

  while (true) {
    if (m0 >= options.max_terms) {
      throw TruncationError(std::string(who) + ": Matsubara series not converged after " +
                                std::to_string(m0) + " terms",
                            out.total.value(), m0);
    }
    const std::size_t n =
        static_cast<std::size_t>(std::min<std::int64_t>(chunk, options.max_terms - m0));
    std::vector<Slot> slots(n);
    auto work = [&](std::size_t first, std::size_t stride) {
      for (std::size_t i = first; i < n; i += stride) {
        try {
          const double zeta = static_cast<double>(m0 + static_cast<std::int64_t>(i)) * zeta1;
          slots[i].value = spectrum(kind, system.surface, system.gap, zeta, spec);
        } catch (...) {
          slots[i].error = std::current_exception();
        }
      }
    };
    const std::size_t used = std::min(workers, n);
    if (used <= 1) {
      work(0, 1);
    } else {
      std::vector<std::future<void>> jobs;
      for (std::size_t w = 1; w < used; ++w) {
        jobs.push_back(std::async(std::launch::async, work, w, used));
      }
      work(0, used);
      for (auto& j : jobs) j.get();
    }

    for (std::size_t i = 0; i < n; ++i) {
      const std::int64_t m = m0 + static_cast<std::int64_t>(i);
      if (slots[i].error) std::rethrow_exception(slots[i].error);
      const SpectralIntegral& s = slots[i].value;
      const double w = m == 0 ? 0.5 : 1.0;
      const double te = w * s.value.te;
      const double tm = w * s.value.tm;
      const double term = te + tm;
      out.te += te;
      out.tm += tm;
      out.total += term;
      out.terms.push_back(term);
      out.quad_error += w * s.error;
      out.m_max = m;

      const double t = std::abs(term);
      const double acc = std::abs(out.total.value());
      if (m > 5) {
        if (t == 0.0) {
          out.tail = 0.0;
          return out;
        }
        if (t < tol * acc / 10.0 && prev_abs > 0.0) {
          const double r = t / prev_abs;
          if (r < 1.0) {
            const double tail = t * r / (1.0 - r);
            if (tail <= tol * acc) {
              out.tail = tail;
              return out;
            }
          }
        }
      }
      prev_abs = t;
    }
    m0 += static_cast<std::int64_t>(n);
    chunk = std::min<std::size_t>(chunk * 2, 1024);
  }
}

}  // namespace

// ---------------------------------------------------------------------------

ReflectionPair reflection_from_permittivity(double eps_minus_one, double p) {
  if (!(eps_minus_one >= 0.0)) throw DomainError("reflection: eps - 1 must be >= 0");
  if (!(p >= 1.0)) throw DomainError("reflection: p = q c / zeta must be >= 1");
  if (std::isinf(eps_minus_one)) return {1.0, 1.0};
  const auto d = detail::coefficients_from_permittivity(eps_minus_one, p);
  return {d.tm.r, d.te.r};
}

ReflectionPair reflection_coefficients(const DispersionModel& model, double zeta, double q) {
  if (!(zeta > 0.0) || !std::isfinite(zeta)) {
    throw DomainError("reflection_coefficients: zeta must be > 0 (use zero_mode_coefficients)");
  }
  const double q_min = zeta / units::c;
  if (!(q >= q_min * (1.0 - 1e-12)) || !std::isfinite(q)) {
    throw DomainError("reflection_coefficients: q must satisfy q >= zeta / c");
  }
  return reflection_from_permittivity(eps_minus_one(model, zeta), std::max(1.0, q / q_min));
}

ReflectionPair reflection_coefficients(const Surface& surface, double zeta, double q) {
  if (const auto* f = std::get_if<FixedReflectivity>(&surface)) {
    check_fixed(*f);
    if (!(zeta > 0.0) || !(q >= zeta / units::c * (1.0 - 1e-12))) {
      throw DomainError("reflection_coefficients: need zeta > 0 and q >= zeta / c");
    }
    return {f->tm, f->te};
  }
  return reflection_coefficients(std::get<DispersionModel>(surface), zeta, q);
}

ReflectionPair zero_mode_coefficients(const DispersionModel& model, double q) {
  if (!(q > 0.0) || !std::isfinite(q)) {
    throw DomainError("zero_mode_coefficients: q must be > 0");
  }
  if (const auto* plasma = std::get_if<PlasmaModel>(&model)) {
    const double k = plasma->omega_p() / units::c;
    const double d = std::hypot(q, k) + q;
    const double r = (k / d) * (k / d);
    return {1.0, r * r};
  }
  return {1.0, 0.0};
}

ReflectionPair zero_mode_coefficients(const Surface& surface, double q) {
  if (const auto* f = std::get_if<FixedReflectivity>(&surface)) {
    check_fixed(*f);
    if (!(q > 0.0)) throw DomainError("zero_mode_coefficients: q must be > 0");
    return {f->tm, f->te};
  }
  return zero_mode_coefficients(std::get<DispersionModel>(surface), q);
}

SpectralIntegral free_energy_spectrum(const Surface& surface, double gap, double zeta,
                                      const SpectralOptions& options) {
  return spectrum(Kind::free_energy, surface, gap, zeta, options);
}

SpectralIntegral pressure_spectrum(const Surface& surface, double gap, double zeta,
                                   const SpectralOptions& options) {
  return spectrum(Kind::pressure, surface, gap, zeta, options);
}

MatsubaraTerm matsubara_term(const PlateSystem& system, std::int64_t m, double quad_tol) {
  check_gap(system.gap);
  if (m < 0) throw DomainError("matsubara_term: m must be >= 0");
  if (!(quad_tol > 0.0 && quad_tol <= 1e-3)) {
    throw InvalidArgument("matsubara_term: quad_tol must lie in (0, 1e-3]");
  }
  const double zeta = units::matsubara_frequency(m, system.temperature);
  SpectralOptions opt;
  opt.rel_tol = quad_tol;
  const SpectralIntegral s = free_energy_spectrum(system.surface, system.gap, zeta, opt);
  const double scale = units::k_B * system.temperature * (m == 0 ? 0.5 : 1.0);
  MatsubaraTerm out;
  out.value.te = scale * s.value.te;
  out.value.tm = scale * s.value.tm;
  out.error = scale * s.error;
  out.evaluations = s.evaluations;
  return out;
}

FreeEnergyResult free_energy(const PlateSystem& system, double tol,
                             const SeriesOptions& options) {
  check_series_args(system, tol, "free_energy");
  SeriesOutcome s = sum_series(Kind::free_energy, system, tol, options, "free_energy");
  const double kt = units::k_B * system.temperature;
  FreeEnergyResult r;
  r.te_part = kt * s.te.value();
  r.tm_part = kt * s.tm.value();
  r.total = kt * s.total.value();
  r.terms = std::move(s.terms);
  for (double& t : r.terms) t *= kt;
  r.m_max = s.m_max;
  r.tail_estimate = kt * s.tail;
  r.quadrature_error = kt * s.quad_error;
  return r;
}

PressureResult pressure(const PlateSystem& system, double tol, const SeriesOptions& options) {
  check_series_args(system, tol, "pressure");
  SeriesOutcome s = sum_series(Kind::pressure, system, tol, options, "pressure");
  const double kt = units::k_B * system.temperature;
  PressureResult r;
  r.te_part = -kt * s.te.value();
  r.tm_part = -kt * s.tm.value();
  r.pressure = -kt * s.total.value();
  r.terms = std::move(s.terms);
  for (double& t : r.terms) t *= -kt;
  r.m_max = s.m_max;
  r.tail_estimate = kt * s.tail;
  r.quadrature_error = kt * s.quad_error;
  return r;
}

std::vector<SurfaceSample> coefficient_surface(const Surface& surface,
                                               std::span<const double> zeta_grid,
                                               std::span<const double> kperp_grid) {
  auto check_grid = [](std::span<const double> g, const char* name) {
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (!(g[i] > 0.0) || !std::isfinite(g[i]) || (i > 0 && !(g[i] > g[i - 1]))) {
        throw InvalidArgument(std::string("coefficient_surface: ") + name +
                              " grid must be positive and strictly ascending");
      }
    }
  };
  check_grid(zeta_grid, "zeta");
  check_grid(kperp_grid, "k_perp");
  std::vector<SurfaceSample> out;
  out.reserve(zeta_grid.size() * kperp_grid.size());
  for (double zeta : zeta_grid) {
    for (double k : kperp_grid) {
      SurfaceSample s{zeta, k, k >= zeta / units::c, {0.0, 0.0}};
      if (s.in_domain) s.coefficients = reflection_coefficients(surface, zeta, k);
      out.push_back(s);
    }
  }
  return out;
}

}  // namespace casimir
