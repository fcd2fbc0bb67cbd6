#include "adialin/postprocess.hpp"

#include <algorithm>
#include <cmath>

#include "adialin/error.hpp"

namespace adialin {

namespace {

constexpr double kUnitTolerance = 1e-9;

}  // namespace

SolveResult truncate_imaginary(const RealCoordinates& state, double epsilon) {
  if (state.u.size() != state.v.size() || state.u.size() == 0) {
    throw InvalidArgument("state halves must be non-empty and of equal length");
  }
  const double total = std::sqrt(state.u.squaredNorm() + state.v.squaredNorm());
  SolveResult r;
  r.epsilon = epsilon < 0.0 ? kTruncationFraction * total : epsilon;
  r.imag_residual = state.v.norm();
  r.truncation_accepted = state.v.squaredNorm() <= r.epsilon * r.epsilon;
  r.solution = renormalize(state.u);
  return r;
}

SolveResult truncate_imaginary(const ComplexVector& state, double epsilon) {
  EvolvedState s;
  s.amplitudes = state;
  return truncate_imaginary(real_coordinates(s), epsilon);
}

RealVector renormalize(const RealVector& x) {
  const double n = x.norm();
  if (!(n > 1e-14)) throw InvalidArgument("cannot renormalize a (near) zero vector");
  return x / n;
}

double fidelity(const RealVector& a, const RealVector& b) {
  if (a.size() != b.size()) throw InvalidArgument("fidelity: length mismatch");
  if (std::abs(a.norm() - 1.0) > kUnitTolerance || std::abs(b.norm() - 1.0) > kUnitTolerance) {
    throw InvalidArgument("fidelity expects unit vectors");
  }
  return std::clamp(std::abs(a.dot(b)), 0.0, 1.0);
}

RealVector reference_solution(const LinearSystemInstance& inst) {
  if (inst.a.rows() != inst.a.cols() || inst.a.rows() != inst.b.size()) {
    throw InvalidArgument("reference_solution: shape mismatch");
  }
  condition_number(inst.a.cast<Complex>());
  const RealVector x = inst.a.partialPivLu().solve(inst.b);
  return renormalize(x);
}

}  // namespace adialin
