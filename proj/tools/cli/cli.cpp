#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "casimir/casimir.h"

namespace casimir_cli {

namespace {

using json = nlohmann::ordered_json;
using Cell = std::variant<double, long long, std::string>;
using Row = std::vector<Cell>;

// A failed library call, message already prefixed with the operation.
struct CallFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(casimir_status st, const std::string& what) {
  if (st == CASIMIR_OK) return;
  throw CallFailed(what + ": " + casimir_status_name(st) + ": " + casimir_last_error());
}

struct MaterialDeleter {
  void operator()(casimir_material* m) const { casimir_material_destroy(m); }
};
using Material = std::unique_ptr<casimir_material, MaterialDeleter>;

struct Options {
  std::string material = "drude";
  double omega_p_ev = 9.03;
  double nu_mev = 34.5;
  std::string table_path;
  std::string gap = "1e-6";
  std::string temp;
  double tol = 0.0;  // 0: command default
  std::string format = "csv";
  std::string out_path;
  std::string zeta = "1e11:1e17:25:log";
  std::string kperp = "1e4:1e9:26:log";
  int basis = 0;
};

struct Table {
  std::vector<std::string> columns;
  std::vector<Row> rows;
  json diagnostics = json::object();
  std::string error;
};

// Value as it appears in CSV, so JSON and CSV carry identical numbers.
json num(double v) {
  if (!std::isfinite(v)) return nullptr;
  return std::strtod(format_number(v).c_str(), nullptr);
}

std::string render(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return format_number(v.get<double>());
  if (v.is_null()) return "nan";
  return v.dump();
}

std::string render(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  return std::get<std::string>(c);
}

json to_json(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return num(*d);
  if (const auto* i = std::get_if<long long>(&c)) return *i;
  return std::get<std::string>(c);
}

void emit_csv(const std::string& command, const json& config, const Table& t,
              std::ostream& os) {
  os << "# casimir " << command << "\n";
  for (const auto& [k, v] : config.items()) os << "# " << k << ": " << render(v) << "\n";
  for (const auto& [k, v] : t.diagnostics.items()) os << "# " << k << ": " << render(v) << "\n";
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << render(row[i]);
    os << "\n";
  }
  if (!t.error.empty()) os << "# error: " << t.error << "\n";
}

void emit_json(const json& config, const Table& t, std::ostream& os) {
  json doc;
  doc["config"] = config;
  doc["columns"] = t.columns;
  json rows = json::array();
  for (const auto& row : t.rows) {
    json r = json::array();
    for (const auto& c : row) r.push_back(to_json(c));
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  doc["diagnostics"] = t.diagnostics;
  if (!t.error.empty()) doc["diagnostics"]["error"] = t.error;
  os << doc.dump(2) << "\n";
}

// f(i) for i in [0, n) on a bounded set of threads; results in input order.
struct Outcome {
  Row row;
  std::string error;
};

std::vector<Outcome> parallel_map(std::size_t n, const std::function<Row(std::size_t)>& f) {
  std::vector<Outcome> out(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        out[i].row = f(i);
      } catch (const std::exception& e) {
        out[i].error = e.what();
      }
    }
  };
  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t nthreads = std::min(n, hw);
  std::vector<std::thread> pool;
  for (std::size_t k = 1; k < nthreads; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return out;
}

// Copies rows up to the first failure.
void collect(Table& t, const std::vector<Outcome>& results) {
  for (const auto& r : results) {
    if (!r.error.empty()) {
      t.error = r.error;
      return;
    }
    t.rows.push_back(r.row);
  }
}

struct Point {
  double gap;
  double temperature;
};

std::vector<Point> grid(const std::vector<double>& gaps, const std::vector<double>& temps) {
  std::vector<Point> pts;
  for (double a : gaps) {
    for (double T : temps) pts.push_back({a, T});
  }
  return pts;
}

double ev(double e) {
  double w = 0.0;
  check(casimir_ev_to_rad_per_s(e, &w), "unit conversion");
  return w;
}

Material make_material(const Options& o) {
  casimir_material* m = nullptr;
  std::string kind = o.material;
  std::string path = o.table_path;
  if (kind.rfind("table:", 0) == 0) {
    path = kind.substr(6);
    kind = "table";
  }
  if (kind == "drude") {
    check(casimir_material_drude(ev(o.omega_p_ev), ev(o.nu_mev * 1e-3), &m), "drude material");
  } else if (kind == "plasma") {
    check(casimir_material_plasma(ev(o.omega_p_ev), &m), "plasma material");
  } else if (kind == "table") {
    if (path.empty()) throw CallFailed("--material table needs --table-path");
    check(casimir_material_table_file(path.c_str(), &m), "permittivity table");
  } else {
    throw CallFailed("unknown material '" + o.material + "'");
  }
  return Material(m);
}

json material_config(const Options& o) {
  json m;
  if (o.material == "table" || o.material.rfind("table:", 0) == 0) {
    m["model"] = "table";
    m["table_path"] = o.material == "table" ? o.table_path : o.material.substr(6);
  } else {
    m["model"] = o.material;
    m["omega_p_eV"] = num(o.omega_p_ev);
    if (o.material != "plasma") m["nu_meV"] = num(o.nu_mev);
  }
  return m;
}

// ---- commands -----------------------------------------------------------

struct Context {
  const Options& opt;
  casimir_material* material;
  std::vector<double> gaps;
  std::vector<double> temps;
  double tol;
};

Table cmd_pressure(const Context& c) {
  Table t;
  t.columns = {"gap_m", "temperature_K", "pressure_Pa", "te_Pa", "tm_Pa",
               "m_max", "tail_Pa", "quadrature_error_Pa"};
  const auto pts = grid(c.gaps, c.temps);
  collect(t, parallel_map(pts.size(), [&](std::size_t i) {
            casimir_series_result r{};
            check(casimir_pressure(c.material, pts[i].gap, pts[i].temperature, c.tol, &r),
                  "pressure");
            return Row{pts[i].gap, pts[i].temperature, r.total, r.te, r.tm,
                       static_cast<long long>(r.m_max), r.tail_estimate, r.quadrature_error};
          }));
  return t;
}

Row free_energy_row(const Context& c, const Point& p) {
  if (p.temperature == 0.0) {
    casimir_zero_temp_result z{};
    check(casimir_zero_temp(c.material, p.gap, c.tol, &z), "zero-temperature free energy");
    return Row{p.gap, p.temperature, z.f0, z.te, z.tm, z.error_estimate, std::string("zero-temp")};
  }
  casimir_series_result r{};
  check(casimir_free_energy(c.material, p.gap, p.temperature, c.tol, &r, nullptr, 0, nullptr),
        "free energy");
  return Row{p.gap, p.temperature, r.total, r.te, r.tm, r.tail_estimate + r.quadrature_error,
             std::string("matsubara")};
}

Table cmd_free_energy(const Context& c) {
  Table t;
  t.columns = {"gap_m", "temperature_K", "free_energy_J_m2", "te_J_m2", "tm_J_m2",
               "error_J_m2", "method"};
  const auto pts = grid(c.gaps, c.temps);
  collect(t, parallel_map(pts.size(), [&](std::size_t i) { return free_energy_row(c, pts[i]); }));
  return t;
}

Table cmd_entropy(const Context& c) {
  Table t;
  t.columns = {"gap_m", "temperature_K", "entropy_J_m2_K"};
  const auto pts = grid(c.gaps, c.temps);
  collect(t, parallel_map(pts.size(), [&](std::size_t i) {
            double s = 0.0;
            check(casimir_entropy(c.material, pts[i].gap, pts[i].temperature, &s), "entropy");
            return Row{pts[i].gap, pts[i].temperature, s};
          }));
  return t;
}

Table cmd_sweep(const Context& c) {
  Table t;
  t.columns = {"gap_m", "temperature_K", "free_energy_J_m2", "pressure_Pa"};
  const auto pts = grid(c.gaps, c.temps);
  collect(t, parallel_map(pts.size(), [&](std::size_t i) {
            const Row f = free_energy_row(c, pts[i]);
            casimir_series_result p{};
            check(casimir_pressure(c.material, pts[i].gap, pts[i].temperature, c.tol, &p),
                  "pressure");
            return Row{pts[i].gap, pts[i].temperature, f[2], p.total};
          }));
  return t;
}

Table cmd_zero_temp(const Context& c) {
  Table t;
  t.columns = {"gap_m", "f0_J_m2", "te_J_m2", "tm_J_m2", "error_J_m2", "evaluations"};
  collect(t, parallel_map(c.gaps.size(), [&](std::size_t i) {
            casimir_zero_temp_result z{};
            check(casimir_zero_temp(c.material, c.gaps[i], c.tol, &z),
                  "zero-temperature free energy");
            return Row{c.gaps[i], z.f0, z.te, z.tm, z.error_estimate,
                       static_cast<long long>(z.evaluations)};
          }));
  return t;
}

Table cmd_asymptotics(const Context& c) {
  Table t;
  t.columns = {"gap_m", "temperature_K", "c1_J_m2_K2", "c2_K-1/2", "leading_J_m2",
               "pade_delta_f_J_m2", "pade_entropy_J_m2_K"};
  double gint = 0.0;
  check(casimir_g_prime_zero_integral(&gint), "g'(0) quadrature");
  t.diagnostics["g_prime_zero"] = num(casimir_g_prime_zero());
  t.diagnostics["g_prime_zero_quadrature"] = num(gint);
  const auto pts = grid(c.gaps, c.temps);
  collect(t, parallel_map(pts.size(), [&](std::size_t i) {
            const auto [a, T] = pts[i];
            double c1 = 0, c2 = 0, lead = 0, pf = 0, ps = 0;
            check(casimir_asymptotic_coefficients(c.material, a, &c1, &c2), "coefficients");
            check(casimir_delta_f_te_leading(c.material, T, &lead), "leading term");
            check(casimir_pade_delta_f(c1, c2, T, &pf), "pade form");
            check(casimir_pade_entropy(c1, c2, T, &ps), "pade entropy");
            return Row{a, T, c1, c2, lead, pf, ps};
          }));
  return t;
}

// delta F_TE at every temperature of the single gap; rows (T, dF) up to the
// first failure.
std::vector<Outcome> te_samples(const Context& c) {
  if (c.gaps.size() != 1) throw CallFailed("this command takes a single --gap");
  const double a = c.gaps.front();
  return parallel_map(c.temps.size(), [&](std::size_t i) {
    double v = 0.0;
    check(casimir_delta_f_te_numeric(c.material, a, c.temps[i], c.tol, &v), "delta F_TE");
    return Row{c.temps[i], v};
  });
}

void split(const Table& t, std::vector<double>& T, std::vector<double>& f) {
  for (const auto& r : t.rows) {
    T.push_back(std::get<double>(r[0]));
    f.push_back(std::get<double>(r[1]));
  }
}

Table cmd_fit_lowtemp(const Context& c) {
  Table t;
  t.columns = {"temperature_K", "delta_f_te_J_m2"};
  collect(t, te_samples(c));
  if (!t.error.empty()) return t;
  std::vector<double> T, f;
  split(t, T, f);
  casimir_fit_result fit{};
  double c1 = 0, c2 = 0;
  check(casimir_asymptotic_coefficients(c.material, c.gaps.front(), &c1, &c2), "coefficients");
  try {
    check(casimir_fit_low_temp(T.data(), f.data(), T.size(), c.opt.basis, &fit), "low-T fit");
  } catch (const CallFailed& e) {
    t.error = e.what();
    return t;
  }
  t.diagnostics["D1_J_m2_K2"] = num(fit.d1);
  t.diagnostics["D2_K-1/2"] = num(fit.d2);
  t.diagnostics["D3_K-1"] = num(fit.d3);
  t.diagnostics["C1_J_m2_K2"] = num(c1);
  t.diagnostics["C2_K-1/2"] = num(c2);
  t.diagnostics["D1_rel_dev"] = num(fit.d1 / c1 - 1.0);
  t.diagnostics["D2_rel_dev"] = num(fit.d2 / c2 - 1.0);
  t.diagnostics["residual_norm"] = num(fit.residual_norm);
  t.diagnostics["condition_number"] = num(fit.condition_number);
  return t;
}

Table cmd_r_series(const Context& c) {
  Table t;
  t.columns = {"temperature_K", "delta_f_te_J_m2", "pade_J_m2", "R"};
  Table samples;
  collect(samples, te_samples(c));
  double c1 = 0, c2 = 0;
  check(casimir_asymptotic_coefficients(c.material, c.gaps.front(), &c1, &c2), "coefficients");
  t.diagnostics["C1_J_m2_K2"] = num(c1);
  t.diagnostics["C2_K-1/2"] = num(c2);
  std::vector<double> T, f;
  split(samples, T, f);
  // R is left undefined on the rows of a partial run.
  std::vector<double> r(T.size(), std::nan(""));
  t.error = samples.error;
  if (t.error.empty()) {
    casimir_r_summary s{};
    try {
      check(casimir_r_series(c1, c2, T.data(), f.data(), T.size(), r.data(), &s), "R series");
      t.diagnostics["intercept"] = num(s.intercept);
      t.diagnostics["intercept_stderr"] = num(s.intercept_stderr);
      t.diagnostics["slope_K-1"] = num(s.slope);
      t.diagnostics["correlation"] = num(s.correlation);
      t.diagnostics["fitted_points"] = static_cast<long long>(s.fitted_points);
    } catch (const CallFailed& e) {
      t.error = e.what();
    }
  }
  for (std::size_t i = 0; i < T.size(); ++i) {
    double p = 0.0;
    check(casimir_pade_delta_f(c1, c2, T[i], &p), "pade form");
    t.rows.push_back(Row{T[i], f[i], p, r[i]});
  }
  return t;
}

Table cmd_coeff_surface(const Context& c) {
  Table t;
  t.columns = {"zeta_rad_s", "kperp_1_m", "epsilon", "A_tm", "B_te", "in_domain"};
  const auto zeta = parse_range(c.opt.zeta);
  const auto kperp = parse_range(c.opt.kperp);
  const std::size_t n = zeta.size() * kperp.size();
  std::vector<double> a(n), b(n);
  std::vector<int> dom(n);
  check(casimir_coefficient_surface(c.material, zeta.data(), zeta.size(), kperp.data(),
                                    kperp.size(), a.data(), b.data(), dom.data()),
        "coefficient surface");
  for (std::size_t i = 0; i < zeta.size(); ++i) {
    double eps = 0.0;
    check(casimir_epsilon(c.material, zeta[i], &eps), "permittivity");
    for (std::size_t j = 0; j < kperp.size(); ++j) {
      const std::size_t k = i * kperp.size() + j;
      t.rows.push_back(Row{zeta[i], kperp[j], eps, a[k], b[k], static_cast<long long>(dom[k])});
    }
  }
  return t;
}

Table cmd_table1(const Context& c) {
  Table t;
  t.columns = {"gap_um", "temperature_K", "computed_mPa", "reference_mPa", "rel_deviation"};
  t.diagnostics["reference"] = casimir_reference_source();
  const std::size_t n = casimir_reference_pressure_count();
  collect(t, parallel_map(n, [&](std::size_t i) {
            double a_um = 0, T = 0, ref = 0;
            check(casimir_reference_pressure(i, &a_um, &T, &ref), "reference table");
            casimir_series_result r{};
            check(casimir_pressure(c.material, a_um * 1e-6, T, c.tol, &r), "pressure");
            const double mpa = std::abs(r.total) * 1e3;
            return Row{a_um, T, mpa, ref, (mpa - ref) / ref};
          }));
  return t;
}

struct Command {
  const char* name;
  const char* help;
  Table (*fn)(const Context&);
  double default_tol;
  const char* default_temp;  // nullptr: --temp has no default
};

const Command kCommands[] = {
    {"pressure", "Casimir pressure P(a, T) in Pa", cmd_pressure, 1e-6, "300"},
    {"free-energy", "free energy per area F(a, T); T = 0 uses the zero-temperature integral",
     cmd_free_energy, 1e-6, "300"},
    {"entropy", "entropy per area S = -dF/dT", cmd_entropy, 1e-6, "300"},
    {"sweep", "free energy and pressure over gap x temperature grids", cmd_sweep, 1e-6,
     "1:1000:25:log"},
    {"zero-temp", "free energy at T = 0", cmd_zero_temp, 1e-6, "0"},
    {"asymptotics", "low-temperature expansion coefficients and Pade forms", cmd_asymptotics,
     1e-9, "2e-3:6e-2:12:log"},
    {"fit-lowtemp", "fit the numerical TE shift at low temperature", cmd_fit_lowtemp, 1e-9,
     "2e-3:6e-2:12:log"},
    {"r-series", "relative deviation R between Pade form and numerics", cmd_r_series, 1e-9,
     "2e-3:6e-2:12:log"},
    {"coeff-surface", "reflection coefficients on a (zeta, k_perp) grid", cmd_coeff_surface,
     1e-6, "0"},
    {"table1", "reference pressure grid with deviations", cmd_table1, 1e-6, "0"},
};

void add_options(CLI::App* sub, Options& o, const std::string& name) {
  sub->add_option("--material", o.material, "drude | plasma | table | table:PATH")
      ->capture_default_str();
  sub->add_option("--omega-p-ev", o.omega_p_ev, "plasma frequency (eV)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--nu-mev", o.nu_mev, "relaxation frequency (meV)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--table-path", o.table_path, "permittivity table: lines 'zeta epsilon'");
  sub->add_option("--tol", o.tol, "relative tolerance")->check(CLI::PositiveNumber);
  sub->add_option("--format", o.format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sub->add_option("--out", o.out_path, "write the table here instead of stdout");
  if (name == "table1" || name == "coeff-surface") {
    if (name == "coeff-surface") {
      sub->add_option("--zeta", o.zeta, "frequency range (rad/s)")->capture_default_str();
      sub->add_option("--kperp", o.kperp, "wavenumber range (1/m)")->capture_default_str();
    }
    return;
  }
  sub->add_option("--gap", o.gap, "separation in m, value or start:stop:count:lin|log")
      ->capture_default_str();
  if (name != "zero-temp") {
    sub->add_option("--temp", o.temp, "temperature in K, value or start:stop:count:lin|log");
  }
  if (name == "fit-lowtemp") {
    sub->add_option("--basis", o.basis, "number of fit basis terms (3..6)");
  }
}

}  // namespace

// ---------------------------------------------------------------------------

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.8e", v);
  return buf;
}

std::vector<double> parse_range(std::string_view spec) {
  auto to_double = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = std::string::npos;
    }
    if (used != s.size() || !std::isfinite(v)) {
      throw std::invalid_argument("bad number '" + s + "' in range '" + std::string(spec) + "'");
    }
    return v;
  };
  std::vector<std::string> parts;
  std::stringstream ss{std::string(spec)};
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.size() == 1) return {to_double(parts[0])};
  if (parts.size() != 4) {
    throw std::invalid_argument("range '" + std::string(spec) +
                                "' is not of the form start:stop:count:lin|log");
  }
  const double lo = to_double(parts[0]);
  const double hi = to_double(parts[1]);
  std::size_t used = 0;
  long count = 0;
  try {
    count = std::stol(parts[2], &used);
  } catch (const std::exception&) {
    used = std::string::npos;
  }
  if (used != parts[2].size() || count < 1) {
    throw std::invalid_argument("range count must be a positive integer, got '" + parts[2] + "'");
  }
  const bool log = parts[3] == "log";
  if (!log && parts[3] != "lin") {
    throw std::invalid_argument("range spacing must be lin or log, got '" + parts[3] + "'");
  }
  if (log && !(lo > 0.0 && hi > 0.0)) {
    throw std::invalid_argument("log range needs positive endpoints");
  }
  std::vector<double> v(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) {
    const double t = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
    v[i] = log ? std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo))) : lo + t * (hi - lo);
  }
  v.front() = lo;
  if (count > 1) v.back() = hi;
  return v;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Thermal Casimir free energy, pressure and entropy between metal plates", "casimir"};
  app.require_subcommand(1);
  Options opt;
  std::vector<std::pair<CLI::App*, const Command*>> subs;
  for (const auto& c : kCommands) {
    auto* sub = app.add_subcommand(c.name, c.help);
    add_options(sub, opt, c.name);
    subs.emplace_back(sub, &c);
  }

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  const Command* cmd = nullptr;
  CLI::App* sub = nullptr;
  for (const auto& [s, c] : subs) {
    if (s->parsed()) {
      sub = s;
      cmd = c;
    }
  }

  const std::string name = cmd->name;
  const bool temp_given = sub->get_option_no_throw("--temp") != nullptr &&
                          sub->get_option("--temp")->count() > 0;
  const std::string temp_spec = temp_given ? opt.temp : cmd->default_temp;
  const double tol = opt.tol > 0.0 ? opt.tol : cmd->default_tol;

  Material material;
  Context ctx{opt, nullptr, {}, {}, tol};
  try {
    ctx.gaps = parse_range(opt.gap);
    ctx.temps = parse_range(temp_spec);
    for (double a : ctx.gaps) {
      if (!(a > 0.0)) throw std::invalid_argument("--gap must be > 0");
    }
    for (double T : ctx.temps) {
      if (T < 0.0 || (T == 0.0 && name != "free-energy" && name != "zero-temp" &&
                      name != "table1" && name != "coeff-surface")) {
        throw std::invalid_argument("--temp must be > 0 for " + name);
      }
    }
    if (name == "coeff-surface") {
      parse_range(opt.zeta);
      parse_range(opt.kperp);
    }
    material = make_material(opt);
    ctx.material = material.get();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  json config;
  config["command"] = name;
  config["material"] = material_config(opt);
  if (name != "table1" && name != "coeff-surface") config["gap_m"] = opt.gap;
  if (name != "table1" && name != "coeff-surface" && name != "zero-temp") {
    config["temperature_K"] = temp_spec;
  }
  if (name == "coeff-surface") {
    config["zeta_rad_s"] = opt.zeta;
    config["kperp_1_m"] = opt.kperp;
  }
  if (name != "coeff-surface") config["tol"] = num(tol);
  if (name == "fit-lowtemp" && opt.basis != 0) config["basis_terms"] = opt.basis;
  config["format"] = opt.format;

  Table table;
  try {
    table = cmd->fn(ctx);
  } catch (const std::exception& e) {
    table.error = e.what();
  }

  std::ofstream file;
  std::ostream* os = &out;
  if (!opt.out_path.empty()) {
    file.open(opt.out_path, std::ios::binary);
    if (!file) {
      err << "error: cannot write '" << opt.out_path << "'\n";
      return kUsage;
    }
    os = &file;
  }
  if (opt.format == "json") {
    emit_json(config, table, *os);
  } else {
    emit_csv(name, config, table, *os);
  }
  os->flush();
  if (!table.error.empty()) {
    err << "error: " << table.error << "\n";
    return kComputationFailed;
  }
  return kOk;
}

}  // namespace casimir_cli
