#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>

namespace casimir::numerics {

/// Neumaier's variant of Kahan summation. Order-dependent but deterministic;
/// callers that need reproducibility must add terms in a fixed order.
class CompensatedSum {
 public:
  CompensatedSum() = default;
  explicit CompensatedSum(double initial) : sum_(initial) {}

  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      compensation_ += (sum_ - t) + x;
    } else {
      compensation_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  CompensatedSum& operator+=(double x) noexcept {
    add(x);
    return *this;
  }

  double value() const noexcept { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

struct QuadratureOptions {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  /// Hard cap on integrand evaluations.
  std::size_t max_evaluations = 10000;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  double abs_value = 0.0;  ///< integral of |f|, used for noise estimates
  std::size_t evaluations = 0;
  bool converged = false;
};

/// Globally adaptive 21-point Gauss-Kronrod quadrature over the panels given
/// by consecutive `breakpoints` (at least two, ascending). The interval with
/// the largest error estimate is bisected until the total error drops below
/// max(abs_tol, rel_tol * |I|) or the evaluation budget is spent. Never
/// throws on non-convergence; check `converged`.
QuadratureResult integrate(const std::function<double(double)>& f,
                           std::span<const double> breakpoints,
                           const QuadratureOptions& options = {});

QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, const QuadratureOptions& options = {});

/// Fixed 21-point Kronrod rule on [a, b] with no adaptivity. Exposed for tests.
double kronrod21(const std::function<double(double)>& f, double a, double b);

struct Rectangle {
  double x0, x1;
  double y0, y1;
};

struct CubatureOptions {
  double rel_tol = 1e-8;
  double abs_tol = 0.0;
  std::size_t max_evaluations = 2'000'000;
};

/// Two-component integrand; components are integrated together and the error
/// criterion applies to their sum.
using Vec2 = std::array<double, 2>;

struct CubatureResult {
  Vec2 value{};
  Vec2 error{};
  std::size_t evaluations = 0;
  std::size_t regions = 0;
  bool converged = false;

  double total() const noexcept { return value[0] + value[1]; }
  double total_error() const noexcept { return error[0] + error[1]; }
};

/// Globally adaptive cubature on a rectangle using the degree-7 Genz-Malik
/// rule with its embedded degree-5 rule as local error estimate. Regions are
/// bisected along the axis with the largest fourth divided difference.
CubatureResult integrate_2d(const std::function<Vec2(double, double)>& f,
                            const Rectangle& box,
                            const CubatureOptions& options = {});

}  // namespace casimir::numerics
