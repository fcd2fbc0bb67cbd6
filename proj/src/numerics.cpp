#include "adialin/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "adialin/error.hpp"

namespace adialin {

namespace {

std::string hermitian_message(std::size_t row, std::size_t col, double defect) {
  std::ostringstream os;
  os << "matrix is not Hermitian: |M(" << row << "," << col << ") - conj(M(" << col << "," << row
     << "))| = " << defect;
  return os.str();
}

}  // namespace

NotHermitianError::NotHermitianError(std::size_t row, std::size_t col, double defect)
    : Error(hermitian_message(row, col, defect)), row_(row), col_(col), defect_(defect) {}

FormViolationError::FormViolationError(double magnitude)
    : Error("state violates the real/imaginary split; max violating magnitude " +
            std::to_string(magnitude)),
      magnitude_(magnitude) {}

VanishingPostSelectionError::VanishingPostSelectionError(double probability, std::size_t step)
    : Error("vanishing post-selection (p = " + std::to_string(probability) + ") at step " +
            std::to_string(step)),
      probability_(probability),
      step_(step) {}

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double hermiticity_defect(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return max_abs(m - m.adjoint());
}

void require_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) {
    throw InvalidArgument("matrix is not square (" + std::to_string(m.rows()) + "x" +
                          std::to_string(m.cols()) + ")");
  }
  if (!m.allFinite()) throw InvalidArgument("matrix has non-finite entries");
  const double scale = std::max(1.0, max_abs(m));
  Eigen::Index worst_r = 0;
  Eigen::Index worst_c = 0;
  const double defect = (m - m.adjoint()).cwiseAbs().maxCoeff(&worst_r, &worst_c);
  if (defect > tol * scale) {
    throw NotHermitianError(static_cast<std::size_t>(worst_r), static_cast<std::size_t>(worst_c),
                            defect);
  }
}

EigenDecomposition hermitian_eig(const ComplexMatrix& m) {
  require_hermitian(m);
  // Symmetrize so the solver only ever sees an exactly Hermitian input.
  const ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  if (solver.info() != Eigen::Success) throw Error("Hermitian eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

RealVector singular_values(const ComplexMatrix& m) {
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues();
}

double spectral_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  return singular_values(m)(0);
}

double condition_number(const ComplexMatrix& m) {
  if (m.rows() != m.cols() || m.size() == 0) {
    throw InvalidArgument("condition number needs a non-empty square matrix");
  }
  const RealVector s = singular_values(m);
  const double smax = s(0);
  const double smin = s(s.size() - 1);
  if (smax == 0.0 || smin <= smax * std::numeric_limits<double>::epsilon()) {
    throw SingularMatrixError("infinite condition number: matrix is singular");
  }
  return smax / smin;
}

ComplexMatrix matrix_exp_hermitian(const ComplexMatrix& h, double t) {
  const EigenDecomposition eig = hermitian_eig(h);
  ComplexVector phases(eig.values.size());
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    phases(i) = std::exp(Complex(0.0, -eig.values(i) * t));
  }
  return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

std::size_t log2_exact(std::size_t n) {
  if (!is_power_of_two(n)) throw InvalidArgument(std::to_string(n) + " is not a power of two");
  std::size_t k = 0;
  while ((std::size_t{1} << k) < n) ++k;
  return k;
}

}  // namespace adialin
