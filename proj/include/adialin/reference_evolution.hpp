#pragma once

#include <iosfwd>
#include <vector>

#include "adialin/hamiltonian.hpp"

namespace adialin {

struct EvolvedState {
  ComplexVector amplitudes;
  std::size_t step = 0;
  double norm = 1.0;
};

/// (I - i H dt) |state>, not renormalized.
EvolvedState first_order_step(const EvolvedState& state, const ComplexMatrix& h, double dt);

/// exp(-i H dt) |state>.
EvolvedState exact_step(const EvolvedState& state, const ComplexMatrix& h, double dt);

enum class EvolutionMode { first_order, exact };

/// Every intermediate state of a product evolution, index 0 being (b, 0).
struct ReferenceTrace {
  EvolutionMode mode = EvolutionMode::first_order;
  std::vector<EvolvedState> states;

  const EvolvedState& final_state() const { return states.back(); }
};

/// Applies H_k = H(k / L) for k = 1..L starting from (b, 0). First-order mode
/// renormalizes after every step; exact mode does not.
ReferenceTrace evolve_product(const LinearSystemInstance& inst, const Schedule& schedule,
                              EvolutionMode mode);

/// Real-coordinate view (u, v) of a state (u, i v).
struct RealCoordinates {
  RealVector u;
  RealVector v;
};

/// Largest |Im| over the first half and |Re| over the second half.
double form_violation(const ComplexVector& amplitudes);

/// Throws FormViolationError when form_violation exceeds `tol`.
RealCoordinates real_coordinates(const EvolvedState& state, double tol = 1e-8);
EvolvedState inverse_real_coordinates(const RealVector& u, const RealVector& v);

/// Debug dump: step, component_index, real_part, imag_part, norm.
void write_trace_csv(std::ostream& os, const ReferenceTrace& trace);

}  // namespace adialin
