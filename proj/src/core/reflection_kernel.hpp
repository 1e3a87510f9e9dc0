#pragma once

#include <cmath>
#include <numbers>

// Cancellation-safe pieces shared by the finite- and zero-temperature
// integrands. Internal to the core library.
namespace casimir::detail {

// A squared reflection coefficient together with 1 - r, so that
// ln(1 - r e^{-y}) stays accurate when r -> 1 and y -> 0.
struct Coef {
  double r = 0.0;
  double one_minus_r = 1.0;
};

struct CoefPair {
  Coef tm;
  Coef te;
};

inline CoefPair coefficients_from_permittivity(double chi, double p) {
  const double eps = 1.0 + chi;
  const double s = std::sqrt(chi + p * p);
  // eps p - s = chi ((eps + 1) p^2 - 1) / (eps p + s),  s - p = chi / (s + p)
  const double d_tm = s + eps * p;
  const double r_tm = (chi / d_tm) * (((eps + 1.0) * p * p - 1.0) / d_tm);
  const double d_te = s + p;
  const double r_te = (chi / d_te) / d_te;
  CoefPair out;
  out.tm = {r_tm * r_tm, 4.0 * (eps * p / d_tm) * (s / d_tm)};
  out.te = {r_te * r_te, 4.0 * (p / d_te) * (s / d_te)};
  return out;
}

// Zero-frequency plasma TE coefficient with K = 2 a omega_p / c, y = 2 q a.
inline Coef plasma_zero_mode_te(double big_k, double y) {
  const double root = std::hypot(y, big_k);
  const double d = root + y;
  const double rb = (big_k / d) * (big_k / d);
  return {rb * rb, 4.0 * (y / d) * (root / d)};
}

// ln(1 - r e^{-y})
inline double log_one_minus(const Coef& c, double y) {
  const double z = c.r * std::exp(-y);
  if (z < 0.5) return std::log1p(-z);
  return std::log(c.one_minus_r - c.r * std::expm1(-y));
}

// r e^{-y} / (1 - r e^{-y})
inline double occupation(const Coef& c, double y) {
  if (c.r == 0.0) return 0.0;
  return c.r / (std::expm1(y) + c.one_minus_r);
}

// ln(1 - e^{-x}) for x > 0
inline double log1mexp(double x) {
  return x < std::numbers::ln2 ? std::log(-std::expm1(-x)) : std::log1p(-std::exp(-x));
}

}  // namespace casimir::detail
