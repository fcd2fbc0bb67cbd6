#pragma once

#include <vector>

#include "adialin/gate.hpp"
#include "adialin/numerics.hpp"

namespace adialin {

/// Gate program on 2n+1 qubits: qubit 0 is the rotation ancilla, qubits
/// 1..n the row register and n+1..2n the column (system) register. The
/// ancillas are qubits 0..n.
struct BlockEncodedOperator {
  std::size_t n = 0;
  std::vector<Gate> gates;
  double alpha = 1.0;  // 1 / 2^n

  std::size_t qubit_count() const noexcept { return 2 * n + 1; }
  std::size_t ancilla_count() const noexcept { return n + 1; }
  std::vector<std::size_t> ancilla_qubits() const;
  ComplexMatrix unitary() const;
};

/// One RotY(2 arccos m_ij) on qubit 0 per entry, controlled on |i>|j>.
/// Rejects entries with |m_ij| > 1.
std::vector<Gate> build_oracle_oa(const RealMatrix& m);

/// n swaps exchanging the two n-qubit index registers.
std::vector<Gate> build_oracle_ob(std::size_t n);

/// U_A = (I (x) H^n (x) I) (I (x) SWAP) O_A (I (x) H^n (x) I).
BlockEncodedOperator assemble_ua(const RealMatrix& m);

/// <0...0, i| U_A |0...0, j> by simulating each basis input.
ComplexMatrix extract_encoded_block(const BlockEncodedOperator& op);

/// Real form [[I, dt B], [-dt C, I]] of I - i H dt for H = [[0, B], [C, 0]]
/// acting on (u, i v). Rejects nonzero diagonal blocks or complex entries.
RealMatrix step_operator_matrix(const ComplexMatrix& h, double dt);

}  // namespace adialin
