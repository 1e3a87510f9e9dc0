#pragma once

#include <functional>

#include "casimir/dispersion.hpp"

namespace casimir {

/// Low-frequency TE data for a Drude metal at fixed gap and temperature,
/// with eps - 1 ~ D / zeta.
struct AsymptoticContext {
  double d;            ///< D = omega_p^2 / nu, rad/s
  double c_coef;       ///< C = omega_p^2 k_B T / (hbar nu c^2), 1/m^2
  double gap;          ///< a, m
  double temperature;  ///< T, K
  double nu;           ///< rad/s, for the regime guard
  double zeta1;        ///< first Matsubara frequency, rad/s

  /// 2 a sqrt(2 pi C m).
  double alpha(double m) const;
};

/// Throws DomainError unless gap > 0 and T > 0.
AsymptoticContext make_context(const DrudeModel& material, double gap, double temperature);

/// g(m) = m Int_{sqrt(zeta_m / D)}^inf x ln[1 - B e^{-alpha(m) x}] dx with
/// B = (sqrt(1 + x^2) - x)^4, for continuous m >= 0. beta F^TE = C Sum' g(m).
/// Throws RegimeError when zeta_m > nu / 10.
double g_of_m(const AsymptoticContext& ctx, double m, double rel_tol = 1e-12);

/// Int_0^inf x ln(1 - (sqrt(1 + x^2) - x)^4) dx by quadrature.
double g_prime_zero_integral(double rel_tol = 1e-13);

/// Closed form -(2 ln 2 - 1) / 4.
double g_prime_zero() noexcept;

/// g'(0) from g_of_m by one-sided differences at h, h/4, h/16 (g is not
/// defined for m < 0) with Richardson elimination of the sqrt(h) and h terms.
double g_prime_zero_finite_difference(const AsymptoticContext& ctx, double h = 1e-3);

/// Gap-independent T^2 term (1/48) (omega_p^2 / (c^2 hbar nu)) (k T)^2 (2 ln 2 - 1).
double delta_f_te_leading(const DrudeModel& material, double temperature);

struct AsymptoticCoefficients {
  double c1;  ///< J/(m^2 K^2)
  double c2;  ///< K^{-1/2}
};

/// c1 from the T^2 term; c2 from the first correction with the empirical
/// factor 0.204, written as the coefficient of T^{1/2}.
AsymptoticCoefficients coefficients(const DrudeModel& material, double gap);

/// c1 T^2 / (1 + c2 sqrt(T)).
double pade_delta_f(const AsymptoticCoefficients& coeffs, double temperature);

/// c1 T^2 (1 - c2 sqrt(T)).
double series_delta_f(const AsymptoticCoefficients& coeffs, double temperature);

/// -d/dT of the Pade form, J/(m^2 K).
double pade_entropy(const AsymptoticCoefficients& coeffs, double temperature);

struct EulerMaclaurinOptions {
  int n_derivatives = 2;  ///< number of Bernoulli terms, 1..4
  double step = 0.1;      ///< finite-difference step in the argument of g
};

/// Sum'_{m>=0} g(m) - Int_0^inf g(u) du from the endpoint expansion
/// -g'(0)/12 + g'''(0)/720 - g^(5)(0)/30240 + g^(7)(0)/1209600, truncated to
/// n_derivatives terms. Odd derivatives come from forward differences of g
/// on 0, h, .., 16 h, checked against step 2h; ConvergenceError when the two
/// disagree (g not smooth enough at the origin for the requested order).
double euler_maclaurin_sum(const std::function<double(double)>& g,
                           const EulerMaclaurinOptions& options = {});

}  // namespace casimir
