#pragma once

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

namespace casimir {

/// Drude permittivity on the imaginary axis,
///   eps(i zeta) = 1 + omega_p^2 / (zeta (zeta + nu)),
/// with nu > 0 held fixed in temperature.
class DrudeModel {
 public:
  /// Both frequencies in rad/s; throws DomainError unless both are > 0.
  DrudeModel(double omega_p, double nu);

  /// Gold: omega_p = 9.03 eV, nu = 34.5 meV.
  static DrudeModel gold();

  double omega_p() const noexcept { return omega_p_; }
  double nu() const noexcept { return nu_; }
  /// omega_p^2 / nu, the low-frequency slope eps ~ D / zeta.
  double d_parameter() const noexcept { return omega_p_ * omega_p_ / nu_; }

  double eps_minus_one(double zeta) const noexcept {
    return omega_p_ * omega_p_ / (zeta * (zeta + nu_));
  }

 private:
  double omega_p_;
  double nu_;
};

/// Dissipationless limit, eps(i zeta) = 1 + omega_p^2 / zeta^2.
class PlasmaModel {
 public:
  explicit PlasmaModel(double omega_p);
  static PlasmaModel gold();

  double omega_p() const noexcept { return omega_p_; }
  double eps_minus_one(double zeta) const noexcept {
    return (omega_p_ / zeta) * (omega_p_ / zeta);
  }

 private:
  double omega_p_;
};

/// Sampled eps(i zeta) with log-log linear interpolation of (zeta, eps - 1).
/// Below the first sample a Drude model fitted to the lowest decade takes
/// over; above the last sample the final log-log slope is continued.
class TabulatedPermittivity {
 public:
  struct Point {
    double zeta;
    double epsilon;
  };

  /// Validates the samples (zeta > 0 strictly increasing, eps > 1, at least
  /// two points) and fits the low-frequency extrapolator.
  explicit TabulatedPermittivity(std::vector<Point> points);

  /// Uses the given extrapolator instead of fitting one.
  TabulatedPermittivity(std::vector<Point> points, DrudeModel extrapolator);

  std::span<const Point> points() const noexcept { return data_->points; }
  const DrudeModel& low_freq_extrapolator() const noexcept { return data_->extrapolator; }
  double eps_minus_one(double zeta) const;

 private:
  struct Data {
    std::vector<Point> points;
    std::vector<double> log_zeta;
    std::vector<double> log_chi;  // log(eps - 1)
    DrudeModel extrapolator;
    double high_slope;
  };
  std::shared_ptr<const Data> data_;

  static std::shared_ptr<const Data> build(std::vector<Point> points,
                                           const DrudeModel* extrapolator);
};

using DispersionModel = std::variant<DrudeModel, PlasmaModel, TabulatedPermittivity>;

/// eps(i zeta) for zeta > 0; throws DomainError otherwise.
double epsilon_at(const DispersionModel& model, double zeta);

/// eps(i zeta) - 1 evaluated without forming eps, so it keeps full relative
/// precision when eps -> 1 at high frequency.
double eps_minus_one(const DispersionModel& model, double zeta);

/// zeta^2 (eps(i zeta) - 1). Vanishes as zeta -> 0 for Drude-type models and
/// tends to omega_p^2 for the plasma model.
double zeta_sq_times_eps_minus_one(const DispersionModel& model, double zeta);

/// True when zeta^2 (eps - 1) -> 0 as zeta -> 0, i.e. the zero-frequency TE
/// reflection vanishes (Drude and Drude-extrapolated tables).
bool has_vanishing_te_zero_mode(const DispersionModel& model) noexcept;

std::string_view model_name(const DispersionModel& model) noexcept;

/// Least-squares Drude fit in log(eps - 1) to the samples within one decade
/// of the lowest frequency. omega_p^2 is eliminated in closed form and nu is
/// found by a bounded one-dimensional minimisation.
DrudeModel fit_drude_low_frequency(std::span<const TabulatedPermittivity::Point> points);

/// Parses the text permittivity format: '#' comment lines, blank lines, and
/// data lines "zeta epsilon". Throws ParseError with the 1-based line number.
TabulatedPermittivity load_permittivity_table(std::istream& source);
TabulatedPermittivity load_permittivity_table(const std::filesystem::path& path);

}  // namespace casimir
