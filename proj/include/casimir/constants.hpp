#pragma once

#include <cstdint>
#include <numbers>

/// Physical constants (CODATA 2018, exact SI where defined) and unit
/// conversions. Everything in the library works in SI: rad/s, m, K, J/m^2, Pa.
namespace casimir::units {

struct PhysicalConstants {
  double hbar;  ///< J s
  double c;     ///< m/s
  double k_B;   ///< J/K
};

inline constexpr PhysicalConstants codata{1.054571817e-34, 2.99792458e8,
                                          1.380649e-23};

inline constexpr double hbar = codata.hbar;
inline constexpr double c = codata.c;
inline constexpr double k_B = codata.k_B;
inline constexpr double elementary_charge = 1.602176634e-19;  // C

inline constexpr double pi = std::numbers::pi;
/// Apery's constant, zeta(3).
inline constexpr double zeta3 = 1.2020569031595942853997;

/// Photon energy in eV to angular frequency (rad/s). Throws DomainError for
/// negative or non-finite input.
double ev_to_rad_per_s(double energy_ev);

/// Matsubara frequency 2 pi k_B m T / hbar for index m >= 0 and T > 0.
double matsubara_frequency(std::int64_t m, double temperature);

/// First Matsubara frequency, 2 pi k_B T / hbar. Shared by the continuous-index
/// helpers so that zeta_m = m * first_matsubara(T) holds bit for bit.
double first_matsubara(double temperature);

/// Plasma wavelength 2 pi c / omega_p.
double plasma_wavelength(double omega_p);

}  // namespace casimir::units
