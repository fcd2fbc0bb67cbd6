#pragma once

#include <iosfwd>
#include <vector>

#include "adialin/numerics.hpp"
#include "adialin/problem.hpp"

namespace adialin {

/// Calibrated default time step. T = steps * dt.
inline constexpr double kDefaultDt = 0.03;
/// First-order validity guard: dt * max_s ||H(s)||_2 <= 0.5.
inline constexpr double kFirstOrderGuard = 0.5;

/// Linear schedule f(s) = s sampled at s_k = k / steps.
struct Schedule {
  std::size_t steps = 1000;
  double dt = kDefaultDt;

  double total_time() const noexcept { return static_cast<double>(steps) * dt; }
  double s_at(std::size_t k) const noexcept {
    return static_cast<double>(k) / static_cast<double>(steps);
  }
};

struct HamiltonianPair {
  ComplexMatrix h0;
  ComplexMatrix h1;
  std::size_t n = 0;  // system dimension; h0 and h1 are 2n x 2n
};

/// I - |b><b|. Rejects a non-unit b.
ComplexMatrix projector_qb(const RealVector& b);

/// [[0, Q_b], [Q_b, 0]].
ComplexMatrix build_h0(const RealVector& b);

/// [[0, A Q_b], [Q_b A, 0]]. The lower-left block is stored as the adjoint
/// of the upper-right one so the result is exactly Hermitian.
ComplexMatrix build_h1(const RealMatrix& a, const RealVector& b);

HamiltonianPair build_pair(const LinearSystemInstance& inst);

/// (1 - s) H0 + s H1, s in [0, 1].
ComplexMatrix interpolate(const HamiltonianPair& pair, double s);

/// ||H(s)|| is convex in s, so the endpoint norms bound it.
double max_interpolated_norm(const HamiltonianPair& pair);

/// Throws ScheduleGuardError or InvalidArgument.
void validate_schedule(const Schedule& schedule, const HamiltonianPair& pair);

struct GapPoint {
  double s = 0.0;
  double gap = 0.0;        // smallest |lambda| outside the two-dimensional kernel
  double criterion = 0.0;  // |<v1| (H1 - H0) |v0>| / gap^2
  bool flagged = false;    // gap below 1e-12
};

/// Adiabatic gap and local adiabaticity criterion on a uniform grid over [0, 1].
std::vector<GapPoint> gap_scan(const HamiltonianPair& pair, std::size_t grid_points);

void write_gap_csv(std::ostream& os, const std::vector<GapPoint>& points);

}  // namespace adialin
