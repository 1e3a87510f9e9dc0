#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "casimir/constants.hpp"
#include "casimir/error.hpp"
#include "casimir/lifshitz.hpp"

using namespace casimir;

namespace {

const Surface kGold{DispersionModel{DrudeModel::gold()}};
const Surface kPlasma{DispersionModel{PlasmaModel::gold()}};
const Surface kIdeal{FixedReflectivity{1.0, 1.0}};

TabulatedPermittivity drude_table() {
  const auto d = DrudeModel::gold();
  std::vector<TabulatedPermittivity::Point> pts;
  for (int i = 0; i <= 900; ++i) {
    const double z = std::pow(10.0, 10.0 + i / 100.0);
    pts.push_back({z, 1.0 + d.eps_minus_one(z)});
  }
  return TabulatedPermittivity(std::move(pts));
}

// Int_{y0}^inf y ln(1 - r e^{-y}) dy by expanding the logarithm.
double log_moment(double r, double y0) {
  double s = 0.0;
  for (int n = 1; n < 1'000'000; ++n) {
    const double dn = n;
    const double t = std::pow(r, n) * std::exp(-n * y0) * (y0 / (dn * dn) + 1.0 / (dn * dn * dn));
    s -= t;
    if (t < 1e-18 * std::abs(s)) break;
  }
  return s;
}

// Int_{y0}^inf y^2 r e^{-y} / (1 - r e^{-y}) dy, same expansion.
double occupation_moment(double r, double y0) {
  double s = 0.0;
  for (int n = 1; n < 1'000'000; ++n) {
    const double dn = n;
    const double t =
        std::pow(r, n) * std::exp(-n * y0) * (y0 * y0 / dn + 2 * y0 / (dn * dn) + 2 / (dn * dn * dn));
    s += t;
    if (t < 1e-18 * s) break;
  }
  return s;
}

}  // namespace

TEST_CASE("reflection coefficients against the textbook form") {
  for (double chi : {0.5, 3.0, 80.0, 1e4}) {
    for (double p : {1.0, 1.3, 7.0, 300.0}) {
      const double eps = 1.0 + chi;
      const double s = std::sqrt(p * p - 1.0 + eps);
      const double tm = std::pow((s - eps * p) / (s + eps * p), 2);
      const double te = std::pow((s - p) / (s + p), 2);
      const auto r = reflection_from_permittivity(chi, p);
      CHECK(r.tm == doctest::Approx(tm).epsilon(1e-12));
      CHECK(r.te == doctest::Approx(te).epsilon(1e-12));
    }
  }
}

TEST_CASE("reflection keeps relative precision as eps -> 1") {
  const double chi = 1e-12;
  for (double p : {1.0, 2.0, 50.0}) {
    const auto r = reflection_from_permittivity(chi, p);
    // s - p ~ chi / 2p, s - eps p ~ chi (1 - 2p^2) / 2p
    CHECK(r.te == doctest::Approx(std::pow(chi / (4 * p * p), 2)).epsilon(1e-9));
    CHECK(r.tm == doctest::Approx(std::pow(chi * (2 * p * p - 1) / (4 * p * p), 2)).epsilon(1e-9));
  }
  const auto zero = reflection_from_permittivity(0.0, 3.0);
  CHECK(zero.tm == 0.0);
  CHECK(zero.te == 0.0);
  const auto inf = reflection_from_permittivity(INFINITY, 3.0);
  CHECK(inf.tm == 1.0);
  CHECK(inf.te == 1.0);
}

TEST_CASE("0 <= B <= A <= 1 on random samples") {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> lz(9.0, 19.0), lp(0.0, 6.0);
  const std::vector<Surface> surfaces{kGold, kPlasma, Surface{DispersionModel{drude_table()}}};
  for (const auto& s : surfaces) {
    for (int i = 0; i < 3000; ++i) {
      const double zeta = std::pow(10.0, lz(rng));
      const double q = zeta / units::c * std::pow(10.0, lp(rng));
      const auto r = reflection_coefficients(s, zeta, q);
      CHECK(r.te >= 0.0);
      CHECK(r.te <= r.tm);
      CHECK(r.tm <= 1.0);
    }
  }
}

TEST_CASE("zero-mode coefficients") {
  CHECK(zero_mode_coefficients(kGold, 1e6).tm == 1.0);
  CHECK(zero_mode_coefficients(kGold, 1e6).te == 0.0);
  const double k = PlasmaModel::gold().omega_p() / units::c;
  const double q = 2e6;
  const double r = (std::sqrt(q * q + k * k) - q) / (std::sqrt(q * q + k * k) + q);
  CHECK(zero_mode_coefficients(kPlasma, q).te == doctest::Approx(r * r).epsilon(1e-12));
  CHECK(zero_mode_coefficients(kPlasma, q).tm == 1.0);
  CHECK_THROWS_AS(zero_mode_coefficients(kGold, 0.0), DomainError);
}

TEST_CASE("reflection domain errors") {
  CHECK_THROWS_AS(reflection_coefficients(kGold, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(reflection_coefficients(kGold, 3e14, 0.5e6), DomainError);
  CHECK_THROWS_AS(reflection_from_permittivity(-1.0, 2.0), DomainError);
  CHECK_THROWS_AS(reflection_from_permittivity(1.0, 0.5), DomainError);
  CHECK_THROWS_AS(reflection_coefficients(Surface{FixedReflectivity{1.5, 0.0}}, 1e14, 1e7),
                  InvalidArgument);
}

TEST_CASE("fixed-reflectivity spectra match the series expansion") {
  const double a = 1e-6;
  for (auto [A, B] : {std::pair{1.0, 1.0}, std::pair{0.7, 0.2}}) {
    const Surface s{FixedReflectivity{A, B}};
    for (double zeta : {0.0, 1e13, 3e14, 2e15}) {
      const double y0 = 2.0 * a * zeta / units::c;
      const auto f = free_energy_spectrum(s, a, zeta, {1e-12, 20000});
      const double pref = 1.0 / (8.0 * units::pi * a * a);
      CHECK(f.value.tm == doctest::Approx(pref * log_moment(A, y0)).epsilon(1e-10));
      CHECK(f.value.te == doctest::Approx(pref * log_moment(B, y0)).epsilon(1e-10));
      const auto p = pressure_spectrum(s, a, zeta, {1e-12, 20000});
      const double pp = 1.0 / (8.0 * units::pi * a * a * a);
      CHECK(p.value.tm == doctest::Approx(pp * occupation_moment(A, y0)).epsilon(1e-10));
      CHECK(p.value.te == doctest::Approx(pp * occupation_moment(B, y0)).epsilon(1e-10));
    }
  }
}

TEST_CASE("ideal-metal zero mode is -k T zeta(3) / (8 pi a^2)") {
  const double a = 2e-6, T = 300.0;
  const auto t = matsubara_term({a, T, kIdeal}, 0, 1e-12);
  const double want = -units::k_B * T * units::zeta3 / (8.0 * units::pi * a * a);
  CHECK(t.total() == doctest::Approx(want).epsilon(1e-11));
}

TEST_CASE("Drude TE zero mode vanishes, plasma does not") {
  const auto d = matsubara_term({1e-6, 300.0, kGold}, 0, 1e-10);
  CHECK(d.value.te == 0.0);
  CHECK(d.value.tm < 0.0);
  const auto p = matsubara_term({1e-6, 300.0, kPlasma}, 0, 1e-10);
  CHECK(p.value.te < 0.0);
  CHECK(p.value.tm == doctest::Approx(d.value.tm).epsilon(1e-12));
}

TEST_CASE("ideal-metal free energy equals the summed closed-form terms") {
  const double a = 1e-6, T = 300.0;
  const auto r = free_energy({a, T, kIdeal}, 1e-10);
  const double z1 = units::first_matsubara(T);
  double want = 0.0;
  for (int m = 0; m < 200; ++m) {
    const double y0 = 2.0 * a * m * z1 / units::c;
    want += (m == 0 ? 0.5 : 1.0) * 2.0 * log_moment(1.0, y0);
  }
  want *= units::k_B * T / (8.0 * units::pi * a * a);
  CHECK(r.total == doctest::Approx(want).epsilon(1e-9));
}

TEST_CASE("series bookkeeping and stopping rule") {
  const double tol = 1e-8;
  const auto r = free_energy({1e-6, 300.0, kGold}, tol);
  CHECK(r.m_max > 5);
  CHECK(r.terms.size() == static_cast<std::size_t>(r.m_max + 1));
  double s = 0.0;
  for (double t : r.terms) s += t;
  CHECK(s == doctest::Approx(r.total).epsilon(1e-13));
  CHECK(r.te_part + r.tm_part == doctest::Approx(r.total).epsilon(1e-14));
  CHECK(r.tail_estimate <= tol * std::abs(r.total));
  CHECK(std::abs(r.terms.back()) < tol * std::abs(r.total) / 10.0);
  CHECK(r.total < 0.0);
}

TEST_CASE("results converge as the tolerance tightens") {
  const PlateSystem sys{1e-6, 300.0, kGold};
  const double loose = free_energy(sys, 1e-6).total;
  const double tight = free_energy(sys, 1e-11).total;
  CHECK(loose == doctest::Approx(tight).epsilon(1e-6));
  const double pl = pressure(sys, 1e-6).pressure;
  const double pt = pressure(sys, 1e-11).pressure;
  CHECK(pl == doctest::Approx(pt).epsilon(1e-6));
}

TEST_CASE("pressure is -dF/da") {
  for (const auto& s : {kGold, kPlasma}) {
    const double a = 1.5e-6, T = 300.0, h = 1e-4 * a;
    const double fp = free_energy({a + h, T, s}, 1e-12).total;
    const double fm = free_energy({a - h, T, s}, 1e-12).total;
    const double p = pressure({a, T, s}, 1e-12).pressure;
    CHECK(p == doctest::Approx(-(fp - fm) / (2.0 * h)).epsilon(1e-7));
  }
}

TEST_CASE("plasma model attracts more strongly than Drude") {
  const double p_drude = pressure({1e-6, 300.0, kGold}, 1e-8).pressure;
  const double p_plasma = pressure({1e-6, 300.0, kPlasma}, 1e-8).pressure;
  CHECK(p_drude < 0.0);
  CHECK(std::abs(p_plasma) > std::abs(p_drude));
}

TEST_CASE("argument validation") {
  CHECK_THROWS_AS(free_energy({0.0, 300.0, kGold}, 1e-6), DomainError);
  CHECK_THROWS_AS(free_energy({1e-6, 0.0, kGold}, 1e-6), DomainError);
  CHECK_THROWS_AS(pressure({1e-6, -1.0, kGold}, 1e-6), DomainError);
  CHECK_THROWS_AS(free_energy({1e-6, 300.0, kGold}, 0.0), InvalidArgument);
  CHECK_THROWS_AS(free_energy({1e-6, 300.0, kGold}, 1e-3), InvalidArgument);
  CHECK_THROWS_AS(matsubara_term({1e-6, 300.0, kGold}, -1, 1e-8), DomainError);
  CHECK_THROWS_AS(matsubara_term({1e-6, 300.0, kGold}, 1, 0.1), InvalidArgument);
}

TEST_CASE("truncation reports the partial sum") {
  SeriesOptions o;
  o.max_terms = 3;
  try {
    free_energy({1e-6, 300.0, kGold}, 1e-8, o);
    FAIL("expected TruncationError");
  } catch (const TruncationError& e) {
    CHECK(e.terms() == 3);
    CHECK(e.partial_sum() < 0.0);
  }
}

TEST_CASE("coefficient surface") {
  const std::vector<double> zeta{1e12, 1e15};
  const std::vector<double> k{1e4, 1e6, 1e8};
  const auto g = coefficient_surface(kGold, zeta, k);
  REQUIRE(g.size() == 6);
  CHECK(g[0].zeta == 1e12);
  CHECK(g[2].kperp == 1e8);
  CHECK(g[0].in_domain);        // 1e4 >= 1e12 / c
  CHECK_FALSE(g[3].in_domain);  // 1e4 < 1e15 / c
  CHECK(g[3].coefficients.tm == 0.0);
  CHECK(g[5].coefficients.tm == doctest::Approx(reflection_coefficients(kGold, 1e15, 1e8).tm));
  const std::vector<double> bad{1e13, 1e12};
  CHECK_THROWS_AS(coefficient_surface(kGold, bad, k), InvalidArgument);
}
