#pragma once

#include <complex>

#include <Eigen/Dense>

namespace adialin {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermitianTolerance = 1e-12;

struct EigenDecomposition {
  RealVector values;      // ascending
  ComplexMatrix vectors;  // column i pairs with values[i]
};

/// Largest |M(i,j) - conj(M(j,i))|.
double hermiticity_defect(const ComplexMatrix& m);

/// Throws NotHermitianError naming the worst entry pair. The tolerance is
/// relative to max(1, max|M|).
void require_hermitian(const ComplexMatrix& m, double tol = kHermitianTolerance);

EigenDecomposition hermitian_eig(const ComplexMatrix& m);

/// Singular values in descending order.
RealVector singular_values(const ComplexMatrix& m);

double spectral_norm(const ComplexMatrix& m);

/// sigma_max / sigma_min. Throws SingularMatrixError when sigma_min is zero
/// relative to sigma_max.
double condition_number(const ComplexMatrix& m);

/// exp(-i H t) via the eigendecomposition of H.
ComplexMatrix matrix_exp_hermitian(const ComplexMatrix& h, double t);

double max_abs(const ComplexMatrix& m);

bool is_power_of_two(std::size_t n) noexcept;
std::size_t log2_exact(std::size_t n);

}  // namespace adialin
