#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"

using casimir_cli::format_number;
using casimir_cli::parse_range;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = casimir_cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  for (std::string p; std::getline(ss, p, sep);) parts.push_back(p);
  return parts;
}

// Data rows of a CSV table (after the header line), split into cells.
std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  bool header = false;
  for (const auto& line : split(text, '\n')) {
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      header = true;
      continue;
    }
    rows.push_back(split(line, ','));
  }
  return rows;
}

std::string header_line(const std::string& text) {
  for (const auto& line : split(text, '\n')) {
    if (!line.empty() && line[0] != '#') return line;
  }
  return {};
}

}  // namespace

TEST_CASE("range grammar") {
  CHECK(parse_range("300") == std::vector<double>{300.0});
  CHECK(parse_range("1:3:3:lin") == std::vector<double>{1.0, 2.0, 3.0});
  const auto l = parse_range("1e-3:1e-1:3:log");
  REQUIRE(l.size() == 3);
  CHECK(l[0] == 1e-3);
  CHECK(l[1] == doctest::Approx(1e-2).epsilon(1e-14));
  CHECK(l[2] == 1e-1);
  CHECK(parse_range("5:9:1:lin") == std::vector<double>{5.0});
  CHECK_THROWS_AS(parse_range("1:2:3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_range("1:2:0:lin"), std::invalid_argument);
  CHECK_THROWS_AS(parse_range("1:2:x:lin"), std::invalid_argument);
  CHECK_THROWS_AS(parse_range("1:2:3:cubic"), std::invalid_argument);
  CHECK_THROWS_AS(parse_range("0:2:3:log"), std::invalid_argument);
  CHECK_THROWS_AS(parse_range("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_range("1e400"), std::invalid_argument);
  CHECK_THROWS_AS(parse_range(""), std::invalid_argument);
}

TEST_CASE("number formatting has nine significant digits") {
  CHECK(format_number(1.0) == "1.00000000e+00");
  CHECK(format_number(-0.0009836886049) == "-9.83688605e-04");
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run({}).code == casimir_cli::kUsage);
  CHECK(run({"frobnicate"}).code == casimir_cli::kUsage);
  CHECK(run({"pressure", "--format", "xml"}).code == casimir_cli::kUsage);
  CHECK(run({"pressure", "--temp", "1:2:3"}).code == casimir_cli::kUsage);
  CHECK(run({"pressure", "--gap", "-1e-6"}).code == casimir_cli::kUsage);
  CHECK(run({"pressure", "--temp", "0"}).code == casimir_cli::kUsage);
  CHECK(run({"pressure", "--material", "table"}).code == casimir_cli::kUsage);
  CHECK(run({"pressure", "--material", "unobtainium"}).code == casimir_cli::kUsage);
  CHECK(run({"pressure", "--omega-p-ev", "-3"}).code == casimir_cli::kUsage);
  CHECK(run({"pressure", "--material", "table:/nonexistent/eps.txt"}).code == casimir_cli::kUsage);
  const auto r = run({"pressure", "--tol", "abc"});
  CHECK(r.code == casimir_cli::kUsage);
  CHECK_FALSE(r.err.empty());
  CHECK(run({"--help"}).code == casimir_cli::kOk);
}

TEST_CASE("table1 reproduces the reference grid") {
  const auto r = run({"table1"});
  REQUIRE(r.code == 0);
  CHECK(header_line(r.out) == "gap_um,temperature_K,computed_mPa,reference_mPa,rel_deviation");
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 18);
  // a = 0.5 um, T = 300 K
  CHECK(std::stod(rows[4][0]) == 0.5);
  CHECK(std::stod(rows[4][1]) == 300.0);
  CHECK(std::stod(rows[4][3]) == 15.49);
  CHECK(std::abs(std::stod(rows[4][4])) < 0.02);
}

TEST_CASE("plasma pressure exceeds Drude at 1 um, 300 K") {
  const auto d = csv_rows(run({"pressure", "--gap", "1e-6", "--temp", "300"}).out);
  const auto p = csv_rows(run({"pressure", "--gap", "1e-6", "--temp", "300", "--material",
                               "plasma"}).out);
  REQUIRE(d.size() == 1);
  REQUIRE(p.size() == 1);
  CHECK(std::abs(std::stod(p[0][2])) > std::abs(std::stod(d[0][2])));
}

TEST_CASE("free-energy at T = 0 routes to the zero-temperature integral") {
  const auto r = run({"free-energy", "--temp", "0", "--tol", "1e-5"});
  REQUIRE(r.code == 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].back() == "zero-temp");
  CHECK(std::stod(rows[0][2]) < 0.0);
  CHECK(std::stod(rows[0][5]) > 0.0);
}

TEST_CASE("output is deterministic and CSV matches JSON") {
  const std::vector<std::string> base{"sweep", "--gap", "1e-6:2e-6:2:lin", "--temp",
                                      "100:300:3:lin"};
  const auto a = run(base);
  const auto b = run(base);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);

  auto json_args = base;
  json_args.insert(json_args.end(), {"--format", "json"});
  const auto j = run(json_args);
  REQUIRE(j.code == 0);
  const auto doc = nlohmann::ordered_json::parse(j.out);
  std::vector<std::string> keys;
  for (const auto& [k, v] : doc.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"config", "columns", "rows", "diagnostics"});

  const auto rows = csv_rows(a.out);
  REQUIRE(rows.size() == 6);
  REQUIRE(doc["rows"].size() == 6);
  CHECK(header_line(a.out) == "gap_m,temperature_K,free_energy_J_m2,pressure_Pa");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t k = 0; k < rows[i].size(); ++k) {
      CHECK(format_number(doc["rows"][i][k].get<double>()) == rows[i][k]);
      CHECK(doc["rows"][i][k].get<double>() == std::strtod(rows[i][k].c_str(), nullptr));
    }
  }
  // input order: gap-major, temperature ascending
  CHECK(std::stod(rows[1][1]) == 200.0);
  CHECK(std::stod(rows[3][0]) == 2e-6);
}

TEST_CASE("failing sweep points flush the rows before them") {
  // the last temperature leaves the low-frequency regime
  const auto r = run({"fit-lowtemp", "--temp", "2e-3:1e2:3:log"});
  CHECK(r.code == casimir_cli::kComputationFailed);
  CHECK(csv_rows(r.out).size() == 2);
  CHECK(r.out.find("# error:") != std::string::npos);
  CHECK(r.err.find("regime") != std::string::npos);

  const auto j = run({"fit-lowtemp", "--temp", "2e-3:1e2:3:log", "--format", "json"});
  const auto doc = nlohmann::ordered_json::parse(j.out);
  CHECK(doc["rows"].size() == 2);
  CHECK(doc["diagnostics"].contains("error"));
}

TEST_CASE("low-temperature commands") {
  const auto f = run({"fit-lowtemp"});
  REQUIRE(f.code == 0);
  CHECK(csv_rows(f.out).size() == 12);
  CHECK(f.out.find("# D1_J_m2_K2: ") != std::string::npos);

  const auto r = run({"r-series", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::ordered_json::parse(r.out);
  CHECK(doc["columns"].back() == "R");
  CHECK(std::abs(doc["diagnostics"]["intercept"].get<double>()) < 0.05);

  const auto a = run({"asymptotics", "--temp", "0.01"});
  REQUIRE(a.code == 0);
  const auto rows = csv_rows(a.out);
  REQUIRE(rows.size() == 1);
  CHECK(std::stod(rows[0][2]) == doctest::Approx(5.81e-13).epsilon(0.01));
}

TEST_CASE("coefficient surface grid") {
  const auto r = run({"coeff-surface", "--zeta", "1e12:1e15:3:log", "--kperp", "1e4:1e8:2:log"});
  REQUIRE(r.code == 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0][5] == "1");
  CHECK(rows[4][5] == "0");  // zeta = 1e15, kperp = 1e4 is below the light line
}

TEST_CASE("entropy and zero-temp commands") {
  const auto e = run({"entropy", "--temp", "300"});
  REQUIRE(e.code == 0);
  CHECK(csv_rows(e.out).size() == 1);
  const auto z = run({"zero-temp", "--gap", "1e-6:2e-6:2:lin", "--tol", "1e-5"});
  REQUIRE(z.code == 0);
  CHECK(csv_rows(z.out).size() == 2);
}

TEST_CASE("tabulated material and --out") {
  const char* dir = std::getenv("CASIMIR_TEST_DATA");
  REQUIRE(dir != nullptr);
  const std::string table = std::string(dir) + "/gold_drude.txt";
  const auto path = std::filesystem::temp_directory_path() / "casimir_cli_test.csv";
  const auto r = run({"pressure", "--material", "table", "--table-path", table, "--out",
                      path.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  const auto rows = csv_rows(buf.str());
  REQUIRE(rows.size() == 1);
  const auto d = csv_rows(run({"pressure"}).out);
  CHECK(std::stod(rows[0][2]) == doctest::Approx(std::stod(d[0][2])).epsilon(1e-3));
  std::filesystem::remove(path);
  CHECK(buf.str().find("# material: {\"model\":\"table\"") != std::string::npos);
}
