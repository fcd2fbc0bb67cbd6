#pragma once

#include "adialin/problem.hpp"
#include "adialin/reference_evolution.hpp"

namespace adialin {

/// Relative truncation threshold: epsilon = 0.1 * ||x||.
inline constexpr double kTruncationFraction = 0.1;

/// Outcome of dropping the imaginary half of a (u, i v) state. When the
/// residual ||v|| exceeds epsilon the run carries a "modify T, dt" signal:
/// accepted is false and suggested_steps proposes a retry.
struct SolveResult {
  RealVector solution;  // renormalized u
  double fidelity = 0.0;
  double imag_residual = 0.0;
  double epsilon = 0.0;
  bool truncation_accepted = false;

  bool modify_signal() const noexcept { return !truncation_accepted; }
};

/// Retry length proposed alongside a modify signal.
inline std::size_t suggested_retry_steps(std::size_t steps) noexcept { return 2 * steps; }

/// `epsilon` < 0 selects 0.1 * ||x||. Fidelity is left at 0.
SolveResult truncate_imaginary(const RealCoordinates& state, double epsilon = -1.0);
SolveResult truncate_imaginary(const ComplexVector& state, double epsilon = -1.0);

/// Rejects ||x|| <= 1e-14.
RealVector renormalize(const RealVector& x);

/// |<a|b>| for unit vectors; rejects non-unit inputs.
double fidelity(const RealVector& a, const RealVector& b);

/// Normalized A^{-1} b; throws SingularMatrixError for singular A.
RealVector reference_solution(const LinearSystemInstance& inst);

}  // namespace adialin
