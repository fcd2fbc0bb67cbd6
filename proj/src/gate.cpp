#include "adialin/gate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "adialin/error.hpp"

namespace adialin {

std::vector<std::size_t> Gate::qubits() const {
  std::vector<std::size_t> out{target};
  if (kind == GateKind::swap) out.push_back(partner);
  for (const Control& c : controls) out.push_back(c.qubit);
  return out;
}

void validate_gate(const Gate& gate, std::size_t qubit_count) {
  std::vector<std::size_t> qs = gate.qubits();
  for (std::size_t q : qs) {
    if (q >= qubit_count) {
      throw InvalidArgument(kind_name(gate.kind) + " touches qubit " + std::to_string(q) +
                            " on a " + std::to_string(qubit_count) + "-qubit register");
    }
  }
  std::sort(qs.begin(), qs.end());
  if (std::adjacent_find(qs.begin(), qs.end()) != qs.end()) {
    throw InvalidArgument(kind_name(gate.kind) + " uses a qubit twice");
  }
  if (!std::isfinite(gate.angle)) throw InvalidArgument("gate angle is not finite");
}

std::size_t circuit_depth(std::size_t qubit_count, std::span<const Gate> gates) {
  std::vector<std::size_t> level(qubit_count, 0);
  std::size_t depth = 0;
  for (const Gate& g : gates) {
    validate_gate(g, qubit_count);
    const auto qs = g.qubits();
    std::size_t at = 0;
    for (std::size_t q : qs) at = std::max(at, level[q]);
    ++at;
    for (std::size_t q : qs) level[q] = at;
    depth = std::max(depth, at);
  }
  return depth;
}

std::string kind_name(GateKind kind) {
  switch (kind) {
    case GateKind::hadamard: return "H";
    case GateKind::rot_y: return "RY";
    case GateKind::pauli_x: return "X";
    case GateKind::pauli_y: return "Y";
    case GateKind::pauli_z: return "Z";
    case GateKind::swap: return "SWAP";
  }
  return "?";
}

void write_program(std::ostream& os, std::span<const Gate> gates) {
  char buf[64];
  for (const Gate& g : gates) {
    os << kind_name(g.kind) << ' ' << g.target;
    if (g.kind == GateKind::swap) os << ' ' << g.partner;
    for (const Control& c : g.controls) os << ' ' << c.qubit << '=' << (c.value ? 1 : 0);
    if (g.kind == GateKind::rot_y) {
      std::snprintf(buf, sizeof buf, " %.17g", g.angle);
      os << buf;
    }
    os << '\n';
  }
}

}  // namespace adialin
