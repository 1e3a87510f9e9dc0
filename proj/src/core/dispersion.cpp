#include "casimir/dispersion.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>

#include <boost/math/tools/minima.hpp>

#include "casimir/constants.hpp"
#include "casimir/error.hpp"

namespace casimir {

namespace {

void require_positive_frequency(double zeta, const char* who) {
  if (!(zeta > 0.0) || !std::isfinite(zeta)) {
    throw DomainError(std::string(who) + ": zeta must be finite and > 0, got " +
                      std::to_string(zeta));
  }
}

}  // namespace

DrudeModel::DrudeModel(double omega_p, double nu) : omega_p_(omega_p), nu_(nu) {
  if (!(omega_p > 0.0) || !std::isfinite(omega_p)) {
    throw DomainError("DrudeModel: omega_p must be > 0");
  }
  if (!(nu > 0.0) || !std::isfinite(nu)) {
    throw DomainError("DrudeModel: nu must be > 0 (use PlasmaModel for nu = 0)");
  }
}

DrudeModel DrudeModel::gold() {
  return DrudeModel(units::ev_to_rad_per_s(9.03), units::ev_to_rad_per_s(34.5e-3));
}

PlasmaModel::PlasmaModel(double omega_p) : omega_p_(omega_p) {
  if (!(omega_p > 0.0) || !std::isfinite(omega_p)) {
    throw DomainError("PlasmaModel: omega_p must be > 0");
  }
}

PlasmaModel PlasmaModel::gold() { return PlasmaModel(units::ev_to_rad_per_s(9.03)); }

// ---------------------------------------------------------------------------

DrudeModel fit_drude_low_frequency(std::span<const TabulatedPermittivity::Point> points) {
  if (points.size() < 2) {
    throw InvalidArgument("fit_drude_low_frequency: need at least two points");
  }
  const double zeta_lo = points.front().zeta;
  std::vector<double> zeta, y;
  for (const auto& p : points) {
    if (p.zeta > 10.0 * zeta_lo * (1.0 + 1e-12) && zeta.size() >= 2) break;
    zeta.push_back(p.zeta);
    y.push_back(std::log(p.epsilon - 1.0));
  }
  const std::size_t n = zeta.size();

  // For fixed nu the optimal log(omega_p^2) is a mean; profile it out.
  auto profile = [&](double log_nu) {
    const double nu = std::exp(log_nu);
    double log_wp2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      log_wp2 += y[i] + std::log(zeta[i]) + std::log(zeta[i] + nu);
    }
    log_wp2 /= static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = y[i] - (log_wp2 - std::log(zeta[i]) - std::log(zeta[i] + nu));
      ss += r * r;
    }
    return std::pair{ss, log_wp2};
  };

  const double lo = std::log(zeta.front() * 1e-6);
  const double hi = std::log(zeta.back() * 1e6);
  constexpr int kScan = 240;
  int best = 0;
  double best_ss = profile(lo).first;
  for (int i = 1; i <= kScan; ++i) {
    const double ss = profile(lo + (hi - lo) * i / kScan).first;
    if (ss < best_ss) {
      best_ss = ss;
      best = i;
    }
  }
  const double step = (hi - lo) / kScan;
  const double a = std::max(lo, lo + (best - 1) * step);
  const double b = std::min(hi, lo + (best + 1) * step);
  const auto [log_nu, ss] = boost::math::tools::brent_find_minima(
      [&](double t) { return profile(t).first; }, a, b, 52);
  (void)ss;
  const double log_wp2 = profile(log_nu).second;
  return DrudeModel(std::exp(0.5 * log_wp2), std::exp(log_nu));
}

std::shared_ptr<const TabulatedPermittivity::Data> TabulatedPermittivity::build(
    std::vector<Point> points, const DrudeModel* extrapolator) {
  if (points.size() < 2) {
    throw InvalidArgument("TabulatedPermittivity: at least two points required");
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    if (!(p.zeta > 0.0) || !std::isfinite(p.zeta)) {
      throw InvalidArgument("TabulatedPermittivity: zeta must be > 0 (point " +
                            std::to_string(i) + ")");
    }
    if (!(p.epsilon > 1.0) || !std::isfinite(p.epsilon)) {
      throw InvalidArgument("TabulatedPermittivity: epsilon must be > 1 (point " +
                            std::to_string(i) + ")");
    }
    if (i > 0 && !(p.zeta > points[i - 1].zeta)) {
      throw InvalidArgument("TabulatedPermittivity: zeta must be strictly increasing (point " +
                            std::to_string(i) + ")");
    }
  }
  std::vector<double> lz(points.size()), lc(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    lz[i] = std::log(points[i].zeta);
    lc[i] = std::log(points[i].epsilon - 1.0);
  }
  const std::size_t k = points.size() - 1;
  const double slope = (lc[k] - lc[k - 1]) / (lz[k] - lz[k - 1]);
  DrudeModel drude = extrapolator ? *extrapolator : fit_drude_low_frequency(points);
  return std::make_shared<const Data>(
      Data{std::move(points), std::move(lz), std::move(lc), drude, slope});
}

TabulatedPermittivity::TabulatedPermittivity(std::vector<Point> points)
    : data_(build(std::move(points), nullptr)) {}

TabulatedPermittivity::TabulatedPermittivity(std::vector<Point> points,
                                             DrudeModel extrapolator)
    : data_(build(std::move(points), &extrapolator)) {}

double TabulatedPermittivity::eps_minus_one(double zeta) const {
  const Data& d = *data_;
  if (zeta < d.points.front().zeta) return d.extrapolator.eps_minus_one(zeta);
  const double lz = std::log(zeta);
  const std::size_t last = d.log_zeta.size() - 1;
  if (zeta >= d.points.back().zeta) {
    return std::exp(d.log_chi[last] + d.high_slope * (lz - d.log_zeta[last]));
  }
  const auto it = std::upper_bound(d.log_zeta.begin(), d.log_zeta.end(), lz);
  const std::size_t j = static_cast<std::size_t>(it - d.log_zeta.begin());
  const std::size_t i = j - 1;
  const double t = (lz - d.log_zeta[i]) / (d.log_zeta[j] - d.log_zeta[i]);
  return std::exp(d.log_chi[i] + t * (d.log_chi[j] - d.log_chi[i]));
}

// ---------------------------------------------------------------------------

double eps_minus_one(const DispersionModel& model, double zeta) {
  require_positive_frequency(zeta, "eps_minus_one");
  return std::visit([zeta](const auto& m) { return m.eps_minus_one(zeta); }, model);
}

double epsilon_at(const DispersionModel& model, double zeta) {
  require_positive_frequency(zeta, "epsilon_at");
  return 1.0 + eps_minus_one(model, zeta);
}

double zeta_sq_times_eps_minus_one(const DispersionModel& model, double zeta) {
  require_positive_frequency(zeta, "zeta_sq_times_eps_minus_one");
  if (const auto* drude = std::get_if<DrudeModel>(&model)) {
    const double wp = drude->omega_p();
    return wp * wp * zeta / (zeta + drude->nu());
  }
  if (const auto* plasma = std::get_if<PlasmaModel>(&model)) {
    return plasma->omega_p() * plasma->omega_p();
  }
  return zeta * zeta * eps_minus_one(model, zeta);
}

bool has_vanishing_te_zero_mode(const DispersionModel& model) noexcept {
  return !std::holds_alternative<PlasmaModel>(model);
}

std::string_view model_name(const DispersionModel& model) noexcept {
  switch (model.index()) {
    case 0: return "drude";
    case 1: return "plasma";
    default: return "table";
  }
}

// ---------------------------------------------------------------------------

namespace {

bool parse_double(std::string_view token, double& out) {
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  if (token.empty()) return false;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && std::isfinite(out);
}

}  // namespace

TabulatedPermittivity load_permittivity_table(std::istream& source) {
  std::vector<TabulatedPermittivity::Point> points;
  std::string line;
  int line_no = 0;
  int last_data_line = 0;
  while (std::getline(source, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream fields(line);
    std::string first;
    if (!(fields >> first) || first.front() == '#') continue;
    std::string second, extra;
    if (!(fields >> second)) {
      throw ParseError(line_no, "line " + std::to_string(line_no) +
                                    ": expected two values 'zeta epsilon'");
    }
    if (fields >> extra && extra.front() != '#') {
      throw ParseError(line_no, "line " + std::to_string(line_no) +
                                    ": unexpected extra field '" + extra + "'");
    }
    double zeta = 0.0, eps = 0.0;
    if (!parse_double(first, zeta) || !parse_double(second, eps)) {
      throw ParseError(line_no, "line " + std::to_string(line_no) + ": cannot parse '" +
                                    line + "' as two numbers");
    }
    if (!(zeta > 0.0)) {
      throw ParseError(line_no, "line " + std::to_string(line_no) + ": zeta must be > 0");
    }
    if (!(eps > 1.0)) {
      throw ParseError(line_no, "line " + std::to_string(line_no) +
                                    ": epsilon must be > 1, got " + second);
    }
    if (!points.empty() && !(zeta > points.back().zeta)) {
      throw ParseError(line_no, "line " + std::to_string(line_no) +
                                    ": zeta must be strictly increasing (previous data on line " +
                                    std::to_string(last_data_line) + ")");
    }
    points.push_back({zeta, eps});
    last_data_line = line_no;
  }
  if (points.empty()) {
    throw ParseError(0, "permittivity table is empty (no data lines)");
  }
  if (points.size() < 2) {
    throw ParseError(last_data_line, "permittivity table needs at least two data lines");
  }
  return TabulatedPermittivity(std::move(points));
}

TabulatedPermittivity load_permittivity_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open permittivity table '" + path.string() + "'");
  return load_permittivity_table(in);
}

}  // namespace casimir
