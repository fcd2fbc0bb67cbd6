#include "adialin/simulator.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "adialin/error.hpp"

namespace adialin {

namespace {

using Mat2 = std::array<Complex, 4>;  // row-major

Mat2 single_qubit_matrix(const Gate& g) {
  const double r = 1.0 / std::sqrt(2.0);
  switch (g.kind) {
    case GateKind::hadamard: return {r, r, r, -r};
    case GateKind::rot_y: {
      const double c = std::cos(g.angle / 2.0);
      const double s = std::sin(g.angle / 2.0);
      return {c, -s, s, c};
    }
    case GateKind::pauli_x: return {0.0, 1.0, 1.0, 0.0};
    case GateKind::pauli_y: return {0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0};
    case GateKind::pauli_z: return {1.0, 0.0, 0.0, -1.0};
    case GateKind::swap: break;
  }
  throw InvalidArgument("not a single-qubit gate");
}

std::size_t bit_of(std::size_t qubit, std::size_t qubit_count) {
  return std::size_t{1} << (qubit_count - 1 - qubit);
}

}  // namespace

StateVector::StateVector(std::size_t qubit_count)
    : qubits_(qubit_count), amps_(ComplexVector::Zero(Eigen::Index{1} << qubit_count)) {
  if (qubit_count > 30) throw InvalidArgument("register too large for dense simulation");
  amps_(0) = 1.0;
}

StateVector StateVector::from_amplitudes(ComplexVector amplitudes) {
  const auto n = static_cast<std::size_t>(amplitudes.size());
  StateVector out(log2_exact(n));
  out.amps_ = std::move(amplitudes);
  return out;
}

void StateVector::normalize() {
  const double n = amps_.norm();
  if (n == 0.0) throw InvalidArgument("cannot normalize a zero state");
  amps_ /= n;
}

void NoiseConfig::validate() const {
  if (!(strength >= 0.0) || !std::isfinite(strength)) {
    throw InvalidArgument("noise strength must be finite and >= 0");
  }
  if (model == NoiseModel::depolarizing && strength > 1.0) {
    throw InvalidArgument("depolarizing probability must be <= 1");
  }
  if (shots && *shots < 1) throw InvalidArgument("shots must be >= 1");
}

std::string noise_model_name(NoiseModel model) {
  switch (model) {
    case NoiseModel::none: return "none";
    case NoiseModel::measurement_gaussian: return "measurement_gaussian";
    case NoiseModel::depolarizing: return "depolarizing";
  }
  return "none";
}

NoiseModel parse_noise_model(const std::string& name) {
  if (name == "none") return NoiseModel::none;
  if (name == "measurement_gaussian") return NoiseModel::measurement_gaussian;
  if (name == "depolarizing") return NoiseModel::depolarizing;
  throw InvalidArgument("unknown noise model \"" + name + "\"");
}

void apply_gate(StateVector& state, const Gate& gate) {
  const std::size_t nq = state.qubit_count();
  validate_gate(gate, nq);
  std::size_t cmask = 0;
  std::size_t cval = 0;
  for (const Control& c : gate.controls) {
    cmask |= bit_of(c.qubit, nq);
    if (c.value) cval |= bit_of(c.qubit, nq);
  }
  ComplexVector& a = state.amplitudes();
  const std::size_t size = state.size();

  if (gate.kind == GateKind::swap) {
    const std::size_t ba = bit_of(gate.target, nq);
    const std::size_t bb = bit_of(gate.partner, nq);
    for (std::size_t i = 0; i < size; ++i) {
      if ((i & ba) && !(i & bb) && (i & cmask) == cval) {
        std::swap(a(static_cast<Eigen::Index>(i)), a(static_cast<Eigen::Index>(i ^ ba ^ bb)));
      }
    }
    return;
  }

  const Mat2 m = single_qubit_matrix(gate);
  const std::size_t bt = bit_of(gate.target, nq);
  for (std::size_t i = 0; i < size; ++i) {
    if ((i & bt) || (i & cmask) != cval) continue;
    const auto i0 = static_cast<Eigen::Index>(i);
    const auto i1 = static_cast<Eigen::Index>(i | bt);
    const Complex x0 = a(i0);
    const Complex x1 = a(i1);
    a(i0) = m[0] * x0 + m[1] * x1;
    a(i1) = m[2] * x0 + m[3] * x1;
  }
}

void run_circuit(StateVector& state, std::span<const Gate> gates) {
  for (const Gate& g : gates) apply_gate(state, g);
}

StateVector prepare_state(const RealVector& amplitudes) {
  if (!is_power_of_two(static_cast<std::size_t>(amplitudes.size()))) {
    throw InvalidArgument("state length must be a power of two");
  }
  if (std::abs(amplitudes.norm() - 1.0) > 1e-10) {
    throw InvalidArgument("state must have unit norm (got " + std::to_string(amplitudes.norm()) +
                          ")");
  }
  return StateVector::from_amplitudes(amplitudes.cast<Complex>());
}

StateVector with_leading_ancillas(const StateVector& system, std::size_t ancillas) {
  StateVector out(system.qubit_count() + ancillas);
  out.amplitudes().setZero();
  out.amplitudes().head(system.amplitudes().size()) = system.amplitudes();
  return out;
}

PostSelection postselect_ancillas(const StateVector& state,
                                  std::span<const std::size_t> ancilla_qubits) {
  const std::size_t nq = state.qubit_count();
  if (ancilla_qubits.empty()) throw InvalidArgument("ancilla set is empty");
  std::vector<bool> is_ancilla(nq, false);
  for (std::size_t q : ancilla_qubits) {
    if (q >= nq) throw InvalidArgument("ancilla index out of range");
    if (is_ancilla[q]) throw InvalidArgument("ancilla listed twice");
    is_ancilla[q] = true;
  }
  if (ancilla_qubits.size() >= nq) throw InvalidArgument("no system qubits left");

  std::size_t amask = 0;
  for (std::size_t q : ancilla_qubits) amask |= bit_of(q, nq);
  std::vector<std::size_t> system_bits;  // most significant first
  for (std::size_t q = 0; q < nq; ++q)
    if (!is_ancilla[q]) system_bits.push_back(bit_of(q, nq));

  const std::size_t rq = system_bits.size();
  ComplexVector reduced = ComplexVector::Zero(Eigen::Index{1} << rq);
  for (std::size_t i = 0; i < state.size(); ++i) {
    if (i & amask) continue;
    std::size_t r = 0;
    for (std::size_t k = 0; k < rq; ++k)
      if (i & system_bits[k]) r |= std::size_t{1} << (rq - 1 - k);
    reduced(static_cast<Eigen::Index>(r)) = state.amplitudes()(static_cast<Eigen::Index>(i));
  }
  const double p = reduced.squaredNorm();
  if (p < 1e-14) throw VanishingPostSelectionError(p, 0);
  reduced /= std::sqrt(p);
  return {StateVector::from_amplitudes(std::move(reduced)), p};
}

RealVector measure_probabilities(const StateVector& state, const NoiseConfig& noise,
                                 std::mt19937_64& rng) {
  RealVector p = state.amplitudes().cwiseAbs2();
  if (noise.model == NoiseModel::measurement_gaussian && noise.strength > 0.0) {
    std::normal_distribution<double> gauss(0.0, noise.strength);
    RealVector q = p;
    for (Eigen::Index i = 0; i < q.size(); ++i) q(i) = std::max(0.0, q(i) + gauss(rng));
    const double total = q.sum();
    if (total > 0.0) p = q / total;
  } else {
    const double total = p.sum();
    if (total > 0.0) p /= total;
  }
  if (noise.shots) {
    const std::size_t shots = *noise.shots;
    std::discrete_distribution<Eigen::Index> pick(p.data(), p.data() + p.size());
    RealVector counts = RealVector::Zero(p.size());
    for (std::size_t s = 0; s < shots; ++s) counts(pick(rng)) += 1.0;
    p = counts / static_cast<double>(shots);
  }
  return p;
}

bool apply_depolarizing(StateVector& state, double p, std::mt19937_64& rng) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("depolarizing p must lie in [0, 1]");
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  if (!(coin(rng) < p)) return false;
  std::uniform_int_distribution<std::size_t> which_qubit(0, state.qubit_count() - 1);
  std::uniform_int_distribution<int> which_pauli(0, 2);
  const std::size_t q = which_qubit(rng);
  switch (which_pauli(rng)) {
    case 0: apply_gate(state, Gate::pauli_x(q)); break;
    case 1: apply_gate(state, Gate::pauli_y(q)); break;
    default: apply_gate(state, Gate::pauli_z(q)); break;
  }
  return true;
}

ComplexMatrix circuit_unitary(std::size_t qubit_count, std::span<const Gate> gates) {
  const auto dim = Eigen::Index{1} << qubit_count;
  ComplexMatrix u(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    StateVector s(qubit_count);
    s.amplitudes().setZero();
    s.amplitudes()(j) = 1.0;
    run_circuit(s, gates);
    u.col(j) = s.amplitudes();
  }
  return u;
}

}  // namespace adialin
