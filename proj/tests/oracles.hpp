#pragma once

// Independent reference computations used by the tests. Nothing here calls
// into the library under test.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace oracle {

using cd = std::complex<double>;
using CM = Eigen::MatrixXcd;
using CV = Eigen::VectorXcd;
using RM = Eigen::MatrixXd;
using RV = Eigen::VectorXd;

inline CM kron(const CM& a, const CM& b) { return Eigen::kroneckerProduct(a, b).eval(); }

inline CM hadamard_power(std::size_t n) {
  CM h(2, 2);
  const double r = 1.0 / std::sqrt(2.0);
  h << r, r, r, -r;
  CM out = CM::Identity(1, 1);
  for (std::size_t k = 0; k < n; ++k) out = kron(out, h);
  return out;
}

/// Dense U_A for |a>|i>|j>, index a*4^n + i*2^n + j, built from explicit matrices.
inline CM ua_dense(const RM& m) {
  const auto d = m.rows();
  std::size_t n = 0;
  while ((Eigen::Index{1} << n) < d) ++n;
  const Eigen::Index dd = d * d;
  const Eigen::Index total = 2 * dd;

  CM oa = CM::Zero(total, total);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      const double c = m(i, j);
      const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
      const Eigen::Index r0 = i * d + j;
      const Eigen::Index r1 = dd + i * d + j;
      oa(r0, r0) = c;
      oa(r0, r1) = -s;
      oa(r1, r0) = s;
      oa(r1, r1) = c;
    }
  }
  CM swap = CM::Zero(total, total);
  for (Eigen::Index a = 0; a < 2; ++a)
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j) swap(a * dd + j * d + i, a * dd + i * d + j) = 1.0;
  const CM hl = kron(kron(CM::Identity(2, 2), hadamard_power(n)), CM::Identity(d, d));
  return hl * swap * oa * hl;
}

/// H(s) assembled from its blocks.
inline CM hamiltonian(const RM& a, const RV& b, double s) {
  const auto n = a.rows();
  const RM q = RM::Identity(n, n) - b * b.transpose();
  const RM m = (1.0 - s) * RM::Identity(n, n) + s * a;
  CM h = CM::Zero(2 * n, 2 * n);
  h.topRightCorner(n, n) = (m * q).cast<cd>();
  h.bottomLeftCorner(n, n) = (q * m).cast<cd>();
  return h;
}

/// Renormalized first-order product; element k is the state after k steps.
inline std::vector<CV> first_order_trace(const RM& a, const RV& b, std::size_t steps, double dt) {
  const auto n = a.rows();
  CV x = CV::Zero(2 * n);
  x.head(n) = b.cast<cd>();
  std::vector<CV> out{x};
  const cd i(0.0, 1.0);
  for (std::size_t k = 1; k <= steps; ++k) {
    const CM h = hamiltonian(a, b, static_cast<double>(k) / static_cast<double>(steps));
    x = x - i * dt * (h * x);
    x /= x.norm();
    out.push_back(x);
  }
  return out;
}

/// exp(-i t H) by scaling and squaring (Pade), independent of any eigensolver.
inline CM expm(const CM& h, double t) {
  const CM arg = (cd(0.0, -t) * h).eval();
  return arg.exp();
}

/// Real-coordinate view (Re of first half, Im of second half).
inline RV real_view(const CV& x) {
  const auto n = x.size() / 2;
  RV out(x.size());
  out.head(n) = x.head(n).real();
  out.tail(n) = x.tail(n).imag();
  return out;
}

inline RV solve_direction(const RM& a, const RV& b) {
  RV x = a.colPivHouseholderQr().solve(b);
  return x / x.norm();
}

inline std::vector<double> ranks(const std::vector<double>& v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
    i = j + 1;
  }
  return r;
}

inline double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  const std::vector<double> rx = ranks(x);
  const std::vector<double> ry = ranks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

/// Least-squares slope of log(y) against log(x).
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace oracle
