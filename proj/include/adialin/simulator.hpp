#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>

#include "adialin/gate.hpp"
#include "adialin/numerics.hpp"

namespace adialin {

/// Dense amplitudes over `qubit_count` qubits; qubit 0 is the most
/// significant bit of the basis index.
class StateVector {
 public:
  explicit StateVector(std::size_t qubit_count);
  static StateVector from_amplitudes(ComplexVector amplitudes);

  std::size_t qubit_count() const noexcept { return qubits_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(amps_.size()); }
  const ComplexVector& amplitudes() const noexcept { return amps_; }
  ComplexVector& amplitudes() noexcept { return amps_; }
  double norm() const { return amps_.norm(); }
  void normalize();

 private:
  std::size_t qubits_;
  ComplexVector amps_;
};

enum class NoiseModel { none, measurement_gaussian, depolarizing };

struct NoiseConfig {
  NoiseModel model = NoiseModel::none;
  double strength = 0.0;             // sigma, or p for depolarizing
  std::optional<std::size_t> shots;  // nullopt = exact probabilities

  void validate() const;
  /// Standard deviation of the measurement noise (0 for other models).
  double measurement_sigma() const noexcept {
    return model == NoiseModel::measurement_gaussian ? strength : 0.0;
  }
};

std::string noise_model_name(NoiseModel model);
NoiseModel parse_noise_model(const std::string& name);

void apply_gate(StateVector& state, const Gate& gate);
void run_circuit(StateVector& state, std::span<const Gate> gates);

/// Direct amplitude initialization of a unit real vector of length 2^n.
StateVector prepare_state(const RealVector& amplitudes);

/// |0...0>_ancillas (x) |system>, ancillas taking the most significant qubits.
StateVector with_leading_ancillas(const StateVector& system, std::size_t ancillas);

struct PostSelection {
  StateVector state;
  double success_probability = 0.0;
};

/// Projects the listed qubits onto |0...0> and renormalizes the survivor.
/// Throws VanishingPostSelectionError below 1e-14 (step index 0).
PostSelection postselect_ancillas(const StateVector& state,
                                  std::span<const std::size_t> ancilla_qubits);

/// Born-rule probabilities, perturbed per `noise`. Gaussian noise is added to
/// each probability, clamped at 0 and renormalized; finite shots replace the
/// result with multinomial frequencies.
RealVector measure_probabilities(const StateVector& state, const NoiseConfig& noise,
                                 std::mt19937_64& rng);

/// With probability p applies a uniformly random Pauli (X, Y or Z) to a
/// uniformly random qubit. Returns whether a Pauli was applied.
bool apply_depolarizing(StateVector& state, double p, std::mt19937_64& rng);

/// Dense unitary realized by `gates`, column j being the image of |j>.
ComplexMatrix circuit_unitary(std::size_t qubit_count, std::span<const Gate> gates);

}  // namespace adialin
