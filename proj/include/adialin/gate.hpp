#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace adialin {

enum class GateKind { hadamard, rot_y, pauli_x, pauli_y, pauli_z, swap };

struct Control {
  std::size_t qubit = 0;
  bool value = true;  // required bit value
};

/// One gate on a register where qubit 0 is the most significant index bit.
///
/// RotY(angle) = [[cos(a/2), -sin(a/2)], [sin(a/2), cos(a/2)]]. Swap exchanges
/// `target` and `partner`; every other kind ignores `partner`.
struct Gate {
  GateKind kind = GateKind::hadamard;
  std::size_t target = 0;
  std::size_t partner = 0;
  double angle = 0.0;
  std::vector<Control> controls;

  static Gate hadamard(std::size_t q) { return {GateKind::hadamard, q, 0, 0.0, {}}; }
  static Gate pauli_x(std::size_t q) { return {GateKind::pauli_x, q, 0, 0.0, {}}; }
  static Gate pauli_y(std::size_t q) { return {GateKind::pauli_y, q, 0, 0.0, {}}; }
  static Gate pauli_z(std::size_t q) { return {GateKind::pauli_z, q, 0, 0.0, {}}; }
  static Gate rot_y(std::size_t q, double angle, std::vector<Control> controls = {}) {
    return {GateKind::rot_y, q, 0, angle, std::move(controls)};
  }
  static Gate swap(std::size_t a, std::size_t b) { return {GateKind::swap, a, b, 0.0, {}}; }

  /// Every qubit the gate touches, controls included.
  std::vector<std::size_t> qubits() const;
};

/// Throws InvalidArgument unless indices are distinct, in range and the angle finite.
void validate_gate(const Gate& gate, std::size_t qubit_count);

/// ASAP layering depth where each gate occupies all qubits it touches.
std::size_t circuit_depth(std::size_t qubit_count, std::span<const Gate> gates);

/// One gate per line: `KIND target [q=v ...] [angle]`.
void write_program(std::ostream& os, std::span<const Gate> gates);
std::string kind_name(GateKind kind);

}  // namespace adialin
