#include <doctest.h>

#include <cmath>

#include "casimir/asymptotics.hpp"
#include "casimir/constants.hpp"
#include "casimir/error.hpp"

using namespace casimir;

namespace {
const DrudeModel kGold = DrudeModel::gold();
const double kGp0 = -(2.0 * std::log(2.0) - 1.0) / 4.0;
}  // namespace

TEST_CASE("g'(0) closed form and quadrature") {
  CHECK(g_prime_zero() == doctest::Approx(kGp0).epsilon(1e-15));
  CHECK(std::abs(g_prime_zero_integral() - kGp0) < 1e-12);
}

TEST_CASE("g'(0) from finite differences of g(m)") {
  const auto ctx = make_context(kGold, 1e-6, 1e-3);
  CHECK(std::abs(g_prime_zero_finite_difference(ctx) - kGp0) < 1e-8);
  CHECK_THROWS_AS(g_prime_zero_finite_difference(ctx, 0.0), InvalidArgument);
}

TEST_CASE("g(m) basics") {
  const auto ctx = make_context(kGold, 1e-6, 0.01);
  CHECK(g_of_m(ctx, 0.0) == 0.0);
  const double g1 = g_of_m(ctx, 1e-4);
  CHECK(g1 < 0.0);
  CHECK(g1 / 1e-4 == doctest::Approx(kGp0).epsilon(0.05));
  CHECK(g_of_m(ctx, 20.0) < 0.0);
  CHECK_THROWS_AS(g_of_m(ctx, -1.0), DomainError);
  // zeta_m > nu / 10 leaves the regime
  const double m_out = 1.01 * kGold.nu() / 10.0 / ctx.zeta1;
  CHECK_THROWS_AS(g_of_m(ctx, m_out), RegimeError);
  CHECK_THROWS_AS(make_context(kGold, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(make_context(kGold, 1e-6, 0.0), DomainError);
}

TEST_CASE("context parameters") {
  const auto ctx = make_context(kGold, 1e-6, 0.02);
  const double wp = kGold.omega_p(), nu = kGold.nu();
  CHECK(ctx.d == doctest::Approx(wp * wp / nu));
  CHECK(ctx.c_coef ==
        doctest::Approx(wp * wp * units::k_B * 0.02 / (units::hbar * nu * units::c * units::c)));
  CHECK(ctx.alpha(3.0) == doctest::Approx(2e-6 * std::sqrt(2.0 * units::pi * ctx.c_coef * 3.0)));
}

TEST_CASE("leading T^2 term is k T C times -g'(0)/12") {
  for (double T : {1e-3, 0.05}) {
    const auto ctx = make_context(kGold, 1e-6, T);
    const double want = units::k_B * T * ctx.c_coef * (-kGp0 / 12.0);
    CHECK(delta_f_te_leading(kGold, T) == doctest::Approx(want).epsilon(1e-13));
  }
  CHECK(delta_f_te_leading(kGold, 0.0) == 0.0);
}

TEST_CASE("coefficients for gold at 1 um") {
  const auto c = coefficients(kGold, 1e-6);
  CHECK(c.c1 == doctest::Approx(5.81e-13).epsilon(0.01));
  CHECK(c.c2 == doctest::Approx(3.03).epsilon(0.02));
  CHECK(c.c1 * 4.0 == doctest::Approx(delta_f_te_leading(kGold, 2.0)).epsilon(1e-13));
  // c2 is linear in a; c1 does not depend on a
  const auto c4 = coefficients(kGold, 4e-6);
  CHECK(c4.c1 == doctest::Approx(c.c1).epsilon(1e-14));
  CHECK(c4.c2 == doctest::Approx(4.0 * c.c2).epsilon(1e-12));
  CHECK_THROWS_AS(coefficients(kGold, -1.0), DomainError);
}

TEST_CASE("Pade form, series form and entropy") {
  const AsymptoticCoefficients c{5.8e-13, 3.0};
  for (double T : {1e-4, 1e-3, 1e-2, 0.1}) {
    const double p = pade_delta_f(c, T);
    const double s = series_delta_f(c, T);
    // both agree through T^{5/2}
    CHECK(std::abs(p - s) <= 1.01 * c.c1 * c.c2 * c.c2 * T * T * T);
    const double h = 1e-6 * T;
    const double num = -(pade_delta_f(c, T + h) - pade_delta_f(c, T - h)) / (2.0 * h);
    CHECK(pade_entropy(c, T) == doctest::Approx(num).epsilon(1e-7));
    CHECK(pade_entropy(c, T) < 0.0);
  }
  CHECK(pade_delta_f(c, 0.0) == 0.0);
  CHECK(pade_entropy(c, 0.0) == 0.0);
  CHECK_THROWS_AS(pade_delta_f(c, -1.0), DomainError);
}

TEST_CASE("Pade form for gold: positive, entropy linear at the origin") {
  const auto c = coefficients(kGold, 1e-6);
  for (double T : {1e-5, 1e-4, 1e-3, 0.01, 0.05, 0.1, 0.5}) CHECK(pade_delta_f(c, T) > 0.0);
  for (double T : {1e-5, 1e-4, 1e-3, 5e-3, 0.01}) {
    CHECK(std::abs(pade_entropy(c, T)) <= 3.0 * c.c1 * T);
  }
  // pade - series = C1 C2^2 T^3 / (1 + C2 sqrt(T))
  for (double T : {1e-4, 1e-5}) {
    const double r = (pade_delta_f(c, T) - series_delta_f(c, T)) / (c.c1 * c.c2 * c.c2 * T * T * T);
    CHECK(r == doctest::Approx(1.0).epsilon(1.5 * c.c2 * std::sqrt(T)));
  }
}

TEST_CASE("Euler-Maclaurin endpoint sum against exact sums") {
  // Sum'_{m>=0} m e^{-m} - Int_0^inf u e^{-u} du = e/(e-1)^2 - 1
  const double e = std::exp(1.0);
  auto g1 = [](double u) { return u * std::exp(-u); };
  EulerMaclaurinOptions o;
  o.n_derivatives = 4;
  CHECK(std::abs(euler_maclaurin_sum(g1, o) - (e / ((e - 1) * (e - 1)) - 1.0)) < 5e-7);

  // Sum'_{m>=0} e^{-m} - 1 = 1/(e-1) - 1/2
  auto g2 = [](double u) { return std::exp(-u); };
  CHECK(std::abs(euler_maclaurin_sum(g2, o) - (1.0 / (e - 1.0) - 0.5)) < 5e-7);

  // even functions: the odd derivatives vanish
  auto g3 = [](double u) { return std::exp(-u * u / 50.0); };
  CHECK(std::abs(euler_maclaurin_sum(g3, o)) < 1e-9);

  // fewer terms are less accurate but still close
  o.n_derivatives = 1;
  CHECK(euler_maclaurin_sum(g2, o) == doctest::Approx(1.0 / 12.0).epsilon(1e-6));
}

TEST_CASE("Euler-Maclaurin brute-force oracle") {
  // direct partial sum and closed-form integral for g(u) = u^2 e^{-u / 3}
  auto g = [](double u) { return u * u * std::exp(-u / 3.0); };
  double sum = 0.0;
  for (int m = 400; m >= 1; --m) sum += g(m);
  const double integral = 2.0 * 27.0;
  EulerMaclaurinOptions o;
  o.n_derivatives = 4;
  o.step = 0.2;
  CHECK(std::abs(euler_maclaurin_sum(g, o) - (sum - integral)) < 1e-7);
}

TEST_CASE("Euler-Maclaurin rejects endpoints that are not smooth") {
  auto g = [](double u) { return std::pow(u, 1.5) * std::exp(-u); };
  EulerMaclaurinOptions o;
  o.n_derivatives = 4;
  CHECK_THROWS_AS(euler_maclaurin_sum(g, o), ConvergenceError);
  o.n_derivatives = 0;
  CHECK_THROWS_AS(euler_maclaurin_sum(g, o), InvalidArgument);
  o.n_derivatives = 5;
  CHECK_THROWS_AS(euler_maclaurin_sum(g, o), InvalidArgument);
  o.n_derivatives = 2;
  o.step = 0.0;
  CHECK_THROWS_AS(euler_maclaurin_sum(g, o), InvalidArgument);
}
