#include "casimir/constants.hpp"

#include <cmath>
#include <string>

#include "casimir/error.hpp"

namespace casimir::units {

double ev_to_rad_per_s(double energy_ev) {
  if (!(energy_ev >= 0.0) || !std::isfinite(energy_ev)) {
    throw DomainError("ev_to_rad_per_s: energy must be finite and >= 0, got " +
                      std::to_string(energy_ev));
  }
  return energy_ev * elementary_charge / hbar;
}

double first_matsubara(double temperature) {
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw DomainError("matsubara frequency: temperature must be > 0, got " +
                      std::to_string(temperature));
  }
  return 2.0 * pi * k_B * temperature / hbar;
}

double matsubara_frequency(std::int64_t m, double temperature) {
  if (m < 0) {
    throw DomainError("matsubara_frequency: index must be >= 0");
  }
  return static_cast<double>(m) * first_matsubara(temperature);
}

double plasma_wavelength(double omega_p) {
  if (!(omega_p > 0.0)) {
    throw DomainError("plasma_wavelength: omega_p must be > 0");
  }
  return 2.0 * pi * c / omega_p;
}

}  // namespace casimir::units
