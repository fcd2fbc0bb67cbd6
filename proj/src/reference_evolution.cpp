#include "adialin/reference_evolution.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "adialin/error.hpp"

namespace adialin {

namespace {

void require_shapes(const EvolvedState& state, const ComplexMatrix& h) {
  if (h.rows() != h.cols() || h.cols() != state.amplitudes.size()) {
    throw InvalidArgument("dimension mismatch: H is " + std::to_string(h.rows()) + "x" +
                          std::to_string(h.cols()) + ", state has " +
                          std::to_string(state.amplitudes.size()) + " amplitudes");
  }
}

EvolvedState first_order_unchecked(const EvolvedState& state, const ComplexMatrix& h, double dt) {
  EvolvedState out;
  out.amplitudes = state.amplitudes - Complex(0.0, dt) * (h * state.amplitudes);
  out.step = state.step + 1;
  out.norm = out.amplitudes.norm();
  return out;
}

}  // namespace

EvolvedState first_order_step(const EvolvedState& state, const ComplexMatrix& h, double dt) {
  require_shapes(state, h);
  if (dt * spectral_norm(h) > kFirstOrderGuard) {
    throw ScheduleGuardError("dt * ||H|| exceeds the first-order guard");
  }
  return first_order_unchecked(state, h, dt);
}

EvolvedState exact_step(const EvolvedState& state, const ComplexMatrix& h, double dt) {
  require_shapes(state, h);
  EvolvedState out;
  out.amplitudes = matrix_exp_hermitian(h, dt) * state.amplitudes;
  out.step = state.step + 1;
  out.norm = out.amplitudes.norm();
  return out;
}

ReferenceTrace evolve_product(const LinearSystemInstance& inst, const Schedule& schedule,
                              EvolutionMode mode) {
  const HamiltonianPair pair = build_pair(inst);
  validate_schedule(schedule, pair);
  const auto n = static_cast<Eigen::Index>(inst.dim);

  ReferenceTrace trace;
  trace.mode = mode;
  trace.states.reserve(schedule.steps + 1);
  EvolvedState state;
  state.amplitudes = ComplexVector::Zero(2 * n);
  state.amplitudes.head(n) = inst.b.cast<Complex>();
  state.norm = 1.0;
  trace.states.push_back(state);

  for (std::size_t k = 1; k <= schedule.steps; ++k) {
    const ComplexMatrix h = interpolate(pair, schedule.s_at(k));
    if (mode == EvolutionMode::first_order) {
      state = first_order_unchecked(state, h, schedule.dt);
      state.amplitudes /= state.norm;
    } else {
      state = exact_step(state, h, schedule.dt);
    }
    trace.states.push_back(state);
  }
  return trace;
}

double form_violation(const ComplexVector& amplitudes) {
  const auto half = amplitudes.size() / 2;
  double worst = 0.0;
  for (Eigen::Index i = 0; i < half; ++i) worst = std::max(worst, std::abs(amplitudes(i).imag()));
  for (Eigen::Index i = half; i < amplitudes.size(); ++i) {
    worst = std::max(worst, std::abs(amplitudes(i).real()));
  }
  return worst;
}

RealCoordinates real_coordinates(const EvolvedState& state, double tol) {
  const auto size = state.amplitudes.size();
  if (size == 0 || size % 2 != 0) throw InvalidArgument("state length must be even");
  const double violation = form_violation(state.amplitudes);
  if (violation > tol) throw FormViolationError(violation);
  const auto n = size / 2;
  return {state.amplitudes.head(n).real(), state.amplitudes.tail(n).imag()};
}

EvolvedState inverse_real_coordinates(const RealVector& u, const RealVector& v) {
  if (u.size() != v.size()) throw InvalidArgument("u and v lengths differ");
  const auto n = u.size();
  EvolvedState out;
  out.amplitudes.resize(2 * n);
  out.amplitudes.head(n) = u.cast<Complex>();
  out.amplitudes.tail(n) = Complex(0.0, 1.0) * v.cast<Complex>();
  out.norm = out.amplitudes.norm();
  return out;
}

void write_trace_csv(std::ostream& os, const ReferenceTrace& trace) {
  os << "step,component_index,real_part,imag_part,norm\n";
  char buf[160];
  for (const EvolvedState& s : trace.states) {
    for (Eigen::Index i = 0; i < s.amplitudes.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%zu,%ld,%.17g,%.17g,%.17g\n", s.step, static_cast<long>(i),
                    s.amplitudes(i).real(), s.amplitudes(i).imag(), s.norm);
      os << buf;
    }
  }
}

}  // namespace adialin
