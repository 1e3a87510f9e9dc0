#include "casimir/reference_data.hpp"

#include <array>

namespace casimir {

namespace {

constexpr std::array<ReferencePressure, 18> kTable = {{
    {0.2, 1.0, 508.2},     {0.2, 300.0, 497.8},     {0.2, 350.0, 495.7},
    {0.5, 1.0, 16.56},     {0.5, 300.0, 15.49},     {0.5, 350.0, 15.30},
    {1.0, 1.0, 1.143},     {1.0, 300.0, 0.9852},    {1.0, 350.0, 0.9590},
    {2.0, 1.0, 7.549e-2},  {2.0, 300.0, 5.550e-2},  {2.0, 350.0, 5.344e-2},
    {3.0, 1.0, 1.520e-2},  {3.0, 300.0, 1.033e-2},  {3.0, 350.0, 1.049e-2},
    {4.0, 1.0, 4.858e-3},  {4.0, 300.0, 3.481e-3},  {4.0, 350.0, 3.804e-3},
}};

}  // namespace

std::span<const ReferencePressure> reference_pressures() noexcept { return kTable; }

std::string_view reference_pressures_source() noexcept {
  return "Au-Au Drude/tabulated-permittivity reference pressures (published table, mPa)";
}

}  // namespace casimir
