#include "adialin/block_encoding.hpp"

#include <cmath>
#include <sstream>

#include "adialin/error.hpp"
#include "adialin/simulator.hpp"

namespace adialin {

namespace {

constexpr double kStructureTolerance = 1e-12;

std::size_t index_qubits(const RealMatrix& m) {
  if (m.rows() != m.cols() || m.rows() < 2) {
    throw InvalidArgument("encoded matrix must be square with size >= 2");
  }
  return log2_exact(static_cast<std::size_t>(m.rows()));
}

}  // namespace

std::vector<std::size_t> BlockEncodedOperator::ancilla_qubits() const {
  std::vector<std::size_t> q(ancilla_count());
  for (std::size_t k = 0; k < q.size(); ++k) q[k] = k;
  return q;
}

ComplexMatrix BlockEncodedOperator::unitary() const {
  return circuit_unitary(qubit_count(), gates);
}

std::vector<Gate> build_oracle_oa(const RealMatrix& m) {
  const std::size_t n = index_qubits(m);
  const auto dim = static_cast<std::size_t>(m.rows());
  std::vector<Gate> gates;
  gates.reserve(dim * dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      const double v = m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      if (!std::isfinite(v) || std::abs(v) > 1.0) {
        std::ostringstream msg;
        msg << "entry (" << i << ", " << j << ") = " << v << " exceeds 1 in magnitude";
        throw InvalidArgument(msg.str());
      }
      std::vector<Control> controls;
      controls.reserve(2 * n);
      for (std::size_t k = 0; k < n; ++k) controls.push_back({1 + k, ((i >> (n - 1 - k)) & 1) != 0});
      for (std::size_t k = 0; k < n; ++k)
        controls.push_back({1 + n + k, ((j >> (n - 1 - k)) & 1) != 0});
      gates.push_back(Gate::rot_y(0, 2.0 * std::acos(v), std::move(controls)));
    }
  }
  return gates;
}

std::vector<Gate> build_oracle_ob(std::size_t n) {
  if (n < 1) throw InvalidArgument("register width must be >= 1");
  std::vector<Gate> gates;
  for (std::size_t k = 0; k < n; ++k) gates.push_back(Gate::swap(1 + k, 1 + n + k));
  return gates;
}

BlockEncodedOperator assemble_ua(const RealMatrix& m) {
  BlockEncodedOperator op;
  op.n = index_qubits(m);
  op.alpha = 1.0 / static_cast<double>(std::size_t{1} << op.n);
  std::vector<Gate> oa = build_oracle_oa(m);
  std::vector<Gate> ob = build_oracle_ob(op.n);
  op.gates.reserve(oa.size() + ob.size() + 2 * op.n);
  for (std::size_t k = 0; k < op.n; ++k) op.gates.push_back(Gate::hadamard(1 + k));
  for (Gate& g : oa) op.gates.push_back(std::move(g));
  for (Gate& g : ob) op.gates.push_back(std::move(g));
  for (std::size_t k = 0; k < op.n; ++k) op.gates.push_back(Gate::hadamard(1 + k));
  return op;
}

ComplexMatrix extract_encoded_block(const BlockEncodedOperator& op) {
  const auto dim = Eigen::Index{1} << op.n;
  ComplexMatrix block(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    StateVector s(op.qubit_count());
    s.amplitudes().setZero();
    s.amplitudes()(j) = 1.0;  // ancillas are the leading qubits, all |0>
    run_circuit(s, op.gates);
    block.col(j) = s.amplitudes().head(dim);
  }
  return block;
}

RealMatrix step_operator_matrix(const ComplexMatrix& h, double dt) {
  if (h.rows() != h.cols() || h.rows() % 2 != 0 || h.rows() == 0) {
    throw InvalidArgument("H must be square with even size");
  }
  if (!std::isfinite(dt)) throw InvalidArgument("dt must be finite");
  const Eigen::Index n = h.rows() / 2;
  const double diag = std::max(h.topLeftCorner(n, n).cwiseAbs().maxCoeff(),
                               h.bottomRightCorner(n, n).cwiseAbs().maxCoeff());
  if (diag > kStructureTolerance) {
    throw InvalidArgument("H has nonzero diagonal blocks (max |entry| " + std::to_string(diag) +
                          ")");
  }
  if (h.imag().cwiseAbs().maxCoeff() > kStructureTolerance) {
    throw InvalidArgument("H has complex entries; only real off-diagonal blocks are supported");
  }
  RealMatrix r = RealMatrix::Identity(2 * n, 2 * n);
  r.topRightCorner(n, n) = dt * h.topRightCorner(n, n).real();
  r.bottomLeftCorner(n, n) = -dt * h.bottomLeftCorner(n, n).real();
  return r;
}

}  // namespace adialin
