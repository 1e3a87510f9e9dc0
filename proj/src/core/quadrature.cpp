#include "casimir/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace casimir::numerics {

namespace {

// 21-point Kronrod abscissae on [-1, 1] (non-negative half) and weights; the
// odd entries are the 10-point Gauss nodes.
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};

constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525680200, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = std::numeric_limits<double>::min();

struct Panel {
  double a, b;
  double value, error, abs_value;
  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel gauss_kronrod21(const std::function<double(double)>& f, double a,
                      double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double resk = kWgk[10] * fc;
  double resg = 0.0;
  double resabs = std::abs(resk);
  std::array<double, 10> f1{}, f2{};
  for (int j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    const double fl = f(center - dx);
    const double fr = f(center + dx);
    f1[j] = fl;
    f2[j] = fr;
    resk += kWgk[j] * (fl + fr);
    resabs += kWgk[j] * (std::abs(fl) + std::abs(fr));
    if (j % 2 == 1) resg += kWg[j / 2] * (fl + fr);
  }
  const double reskh = 0.5 * resk;
  double resasc = kWgk[10] * std::abs(fc - reskh);
  for (int j = 0; j < 10; ++j) {
    resasc += kWgk[j] * (std::abs(f1[j] - reskh) + std::abs(f2[j] - reskh));
  }
  const double scale = std::abs(half);
  resasc *= scale;
  resabs *= scale;
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  if (resabs > kTiny / (50.0 * kEps)) {
    err = std::max(50.0 * kEps * resabs, err);
  }
  return Panel{a, b, resk * half, err, resabs};
}

}  // namespace

double kronrod21(const std::function<double(double)>& f, double a, double b) {
  return gauss_kronrod21(f, a, b).value;
}

QuadratureResult integrate(const std::function<double(double)>& f,
                           std::span<const double> breakpoints,
                           const QuadratureOptions& options) {
  QuadratureResult out;
  if (breakpoints.size() < 2) return out;

  std::priority_queue<Panel> heap;
  std::vector<Panel> frozen;  // too narrow to bisect further
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (!(breakpoints[i + 1] > breakpoints[i])) continue;
    heap.push(gauss_kronrod21(f, breakpoints[i], breakpoints[i + 1]));
    out.evaluations += 21;
  }

  auto totals = [&](double& value, double& error, double& abs_value) {
    CompensatedSum v, e, av;
    auto copy = heap;
    while (!copy.empty()) {
      v += copy.top().value;
      e += copy.top().error;
      av += copy.top().abs_value;
      copy.pop();
    }
    for (const auto& p : frozen) {
      v += p.value;
      e += p.error;
      av += p.abs_value;
    }
    value = v.value();
    error = e.value();
    abs_value = av.value();
  };

  // Running totals drift slightly under add/subtract; they only steer the
  // loop, the reported result is recomputed from the panels.
  double value = 0.0, error = 0.0, abs_value = 0.0;
  totals(value, error, abs_value);

  while (!heap.empty()) {
    const double target = std::max(options.abs_tol, options.rel_tol * std::abs(value));
    if (error <= target) {
      double v, e, av;
      totals(v, e, av);
      value = v;
      error = e;
      abs_value = av;
      if (error <= std::max(options.abs_tol, options.rel_tol * std::abs(value))) {
        out.converged = true;
        break;
      }
    }
    if (out.evaluations + 42 > options.max_evaluations) break;

    Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b) ||
        (worst.b - worst.a) <= 64.0 * kEps * std::max(std::abs(worst.a), std::abs(worst.b))) {
      frozen.push_back(worst);
      continue;
    }
    const Panel left = gauss_kronrod21(f, worst.a, mid);
    const Panel right = gauss_kronrod21(f, mid, worst.b);
    out.evaluations += 42;
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }

  totals(out.value, out.error, out.abs_value);
  if (!out.converged) {
    out.converged =
        out.error <= std::max(options.abs_tol, options.rel_tol * std::abs(out.value));
  }
  return out;
}

QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, const QuadratureOptions& options) {
  const std::array<double, 2> pts{a, b};
  return integrate(f, pts, options);
}

namespace {

// Genz-Malik degree-7 rule in two dimensions, weights normalised to sum to 1.
constexpr double kLambda2 = 0.35856858280031809199064515390793;  // sqrt(9/70)
constexpr double kLambda4 = 0.94868329805051379959966806332982;  // sqrt(9/10)
constexpr double kLambda5 = 0.68824720161168529772162873429362;  // sqrt(9/19)

constexpr double kW1 = -3816.0 / 19683.0;
constexpr double kW2 = 980.0 / 6561.0;
constexpr double kW3 = 1020.0 / 19683.0;
constexpr double kW4 = 200.0 / 19683.0;
constexpr double kW5 = 6859.0 / 19683.0 / 4.0;

constexpr double kW1p = -971.0 / 729.0;
constexpr double kW2p = 245.0 / 486.0;
constexpr double kW3p = 65.0 / 1458.0;
constexpr double kW4p = 25.0 / 729.0;

struct Region {
  Rectangle box;
  Vec2 value;
  Vec2 error;
  int split_axis;
  double priority() const { return error[0] + error[1]; }
  bool operator<(const Region& other) const { return priority() < other.priority(); }
};

Region genz_malik(const std::function<Vec2(double, double)>& f, const Rectangle& r) {
  const double cx = 0.5 * (r.x0 + r.x1);
  const double cy = 0.5 * (r.y0 + r.y1);
  const double hx = 0.5 * (r.x1 - r.x0);
  const double hy = 0.5 * (r.y1 - r.y0);
  const double area = 4.0 * hx * hy;

  const Vec2 f0 = f(cx, cy);
  Vec2 s2{}, s3{}, s4{}, s5{};
  std::array<double, 2> diff{};

  // Axis points at lambda2 and lambda3 (= lambda4).
  for (int axis = 0; axis < 2; ++axis) {
    const double dx2 = axis == 0 ? hx * kLambda2 : 0.0;
    const double dy2 = axis == 1 ? hy * kLambda2 : 0.0;
    const double dx3 = axis == 0 ? hx * kLambda4 : 0.0;
    const double dy3 = axis == 1 ? hy * kLambda4 : 0.0;
    const Vec2 a = f(cx - dx2, cy - dy2);
    const Vec2 b = f(cx + dx2, cy + dy2);
    const Vec2 c = f(cx - dx3, cy - dy3);
    const Vec2 d = f(cx + dx3, cy + dy3);
    double d2 = 0.0, d3 = 0.0;
    for (int k = 0; k < 2; ++k) {
      s2[k] += a[k] + b[k];
      s3[k] += c[k] + d[k];
      d2 += a[k] + b[k] - 2.0 * f0[k];
      d3 += c[k] + d[k] - 2.0 * f0[k];
    }
    diff[axis] = std::abs(d2 - d3 / 7.0);
  }
  for (int sx = -1; sx <= 1; sx += 2) {
    for (int sy = -1; sy <= 1; sy += 2) {
      const Vec2 g4 = f(cx + sx * hx * kLambda4, cy + sy * hy * kLambda4);
      const Vec2 g5 = f(cx + sx * hx * kLambda5, cy + sy * hy * kLambda5);
      for (int k = 0; k < 2; ++k) {
        s4[k] += g4[k];
        s5[k] += g5[k];
      }
    }
  }

  Region out{r, {}, {}, 0};
  for (int k = 0; k < 2; ++k) {
    const double i7 = area * (kW1 * f0[k] + kW2 * s2[k] + kW3 * s3[k] + kW4 * s4[k] + kW5 * s5[k]);
    const double i5 = area * (kW1p * f0[k] + kW2p * s2[k] + kW3p * s3[k] + kW4p * s4[k]);
    out.value[k] = i7;
    out.error[k] = std::max(std::abs(i7 - i5), 50.0 * kEps * std::abs(i7));
  }
  // Prefer the wider side when the differences tie (e.g. both zero).
  if (std::abs(diff[0] - diff[1]) <= 1e-14 * std::max(diff[0], diff[1])) {
    out.split_axis = (hx >= hy) ? 0 : 1;
  } else {
    out.split_axis = diff[0] > diff[1] ? 0 : 1;
  }
  return out;
}

constexpr std::size_t kGenzMalikPoints = 17;

}  // namespace

CubatureResult integrate_2d(const std::function<Vec2(double, double)>& f,
                            const Rectangle& box, const CubatureOptions& options) {
  CubatureResult out;
  std::priority_queue<Region> heap;
  heap.push(genz_malik(f, box));
  out.evaluations = kGenzMalikPoints;

  Vec2 value = heap.top().value;
  Vec2 error = heap.top().error;

  auto recompute = [&] {
    CompensatedSum v0, v1, e0, e1;
    auto copy = heap;
    while (!copy.empty()) {
      v0 += copy.top().value[0];
      v1 += copy.top().value[1];
      e0 += copy.top().error[0];
      e1 += copy.top().error[1];
      copy.pop();
    }
    value = {v0.value(), v1.value()};
    error = {e0.value(), e1.value()};
  };

  std::size_t since_recompute = 0;
  while (true) {
    const double target =
        std::max(options.abs_tol, options.rel_tol * std::abs(value[0] + value[1]));
    if (error[0] + error[1] <= target) {
      recompute();
      if (error[0] + error[1] <=
          std::max(options.abs_tol, options.rel_tol * std::abs(value[0] + value[1]))) {
        out.converged = true;
        break;
      }
    }
    if (out.evaluations + 2 * kGenzMalikPoints > options.max_evaluations) break;

    const Region worst = heap.top();
    heap.pop();
    Rectangle a = worst.box, b = worst.box;
    if (worst.split_axis == 0) {
      const double mid = 0.5 * (worst.box.x0 + worst.box.x1);
      a.x1 = mid;
      b.x0 = mid;
    } else {
      const double mid = 0.5 * (worst.box.y0 + worst.box.y1);
      a.y1 = mid;
      b.y0 = mid;
    }
    const Region ra = genz_malik(f, a);
    const Region rb = genz_malik(f, b);
    out.evaluations += 2 * kGenzMalikPoints;
    for (int k = 0; k < 2; ++k) {
      value[k] += ra.value[k] + rb.value[k] - worst.value[k];
      error[k] += ra.error[k] + rb.error[k] - worst.error[k];
    }
    heap.push(ra);
    heap.push(rb);
    if (++since_recompute == 4096) {
      recompute();
      since_recompute = 0;
    }
  }

  recompute();
  out.value = value;
  out.error = error;
  out.regions = heap.size();
  if (!out.converged) {
    out.converged = error[0] + error[1] <=
                    std::max(options.abs_tol, options.rel_tol * std::abs(value[0] + value[1]));
  }
  return out;
}

}  // namespace casimir::numerics
