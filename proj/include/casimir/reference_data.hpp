#pragma once

#include <span>
#include <string_view>

namespace casimir {

/// Published Casimir pressures for gold plates, magnitudes in mPa.
struct ReferencePressure {
  double gap_um;
  double temperature;  ///< K
  double pressure_mpa;
};

/// The 6 x 3 grid a in {0.2, 0.5, 1, 2, 3, 4} um, T in {1, 300, 350} K,
/// gap-major.
std::span<const ReferencePressure> reference_pressures() noexcept;

/// Short provenance tag for the dataset above.
std::string_view reference_pressures_source() noexcept;

}  // namespace casimir
