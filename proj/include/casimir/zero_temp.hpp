#pragma once

#include <cstddef>

#include "casimir/lifshitz.hpp"

namespace casimir {

struct ZeroTempResult {
  double f0 = 0.0;  ///< J/m^2
  double te_part = 0.0;
  double tm_part = 0.0;
  double error_estimate = 0.0;  ///< J/m^2, cubature estimate plus truncated tail
  std::size_t evaluations = 0;
};

/// Free energy per unit area at T = 0, where the Matsubara sum becomes an
/// integral over continuous zeta:
///   F0 = (hbar / 4 pi^2) Int_0^inf dzeta Int_{zeta/c}^inf q dq
///        [ln(1 - A e^{-2qa}) + ln(1 - B e^{-2qa})].
/// Evaluated by adaptive cubature in v = ln(1 + 2 a zeta / c) and
/// t = 2 q a - 2 a zeta / c. tol in (0, 1e-4]; throws ConvergenceError when
/// the node budget runs out.
ZeroTempResult free_energy_T0(double gap, const Surface& surface, double tol,
                              std::size_t max_evaluations = 4'000'000);

}  // namespace casimir
