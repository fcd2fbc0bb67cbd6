#include "adialin/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>

#include "adialin/error.hpp"

namespace adialin {

namespace {

// ker H(s) = span{(x(s), 0), (0, b)} for every s in [0, 1].
constexpr Eigen::Index kKernelDim = 2;

}  // namespace

ComplexMatrix projector_qb(const RealVector& b) {
  if (b.size() == 0) throw InvalidArgument("b is empty");
  if (std::abs(b.norm() - 1.0) > 1e-10) {
    throw InvalidArgument("b must be a unit vector (norm " + std::to_string(b.norm()) + ")");
  }
  const auto n = b.size();
  const RealMatrix q = RealMatrix::Identity(n, n) - b * b.transpose();
  return q.cast<Complex>();
}

ComplexMatrix build_h0(const RealVector& b) {
  const ComplexMatrix q = projector_qb(b);
  const auto n = q.rows();
  ComplexMatrix h = ComplexMatrix::Zero(2 * n, 2 * n);
  h.topRightCorner(n, n) = q;
  h.bottomLeftCorner(n, n) = q.adjoint();
  return h;
}

ComplexMatrix build_h1(const RealMatrix& a, const RealVector& b) {
  if (a.rows() != a.cols() || a.rows() != b.size()) {
    throw InvalidArgument("A and b dimensions do not agree");
  }
  const ComplexMatrix q = projector_qb(b);
  const auto n = q.rows();
  const ComplexMatrix aq = a.cast<Complex>() * q;
  ComplexMatrix h = ComplexMatrix::Zero(2 * n, 2 * n);
  h.topRightCorner(n, n) = aq;
  h.bottomLeftCorner(n, n) = aq.adjoint();  // = Q_b A for symmetric A
  return h;
}

HamiltonianPair build_pair(const LinearSystemInstance& inst) {
  return {build_h0(inst.b), build_h1(inst.a, inst.b), inst.dim};
}

ComplexMatrix interpolate(const HamiltonianPair& pair, double s) {
  if (!(s >= 0.0 && s <= 1.0)) {
    throw InvalidArgument("interpolation parameter s = " + std::to_string(s) +
                          " is outside [0, 1]");
  }
  return (1.0 - s) * pair.h0 + s * pair.h1;
}

double max_interpolated_norm(const HamiltonianPair& pair) {
  return std::max(spectral_norm(pair.h0), spectral_norm(pair.h1));
}

void validate_schedule(const Schedule& schedule, const HamiltonianPair& pair) {
  if (schedule.steps < 1) throw InvalidArgument("schedule needs at least one step");
  if (!(schedule.dt > 0.0) || !std::isfinite(schedule.dt)) {
    throw InvalidArgument("schedule dt must be positive and finite");
  }
  const double bound = schedule.dt * max_interpolated_norm(pair);
  if (bound > kFirstOrderGuard) {
    throw ScheduleGuardError("dt * max ||H(s)|| = " + std::to_string(bound) + " exceeds " +
                             std::to_string(kFirstOrderGuard));
  }
}

std::vector<GapPoint> gap_scan(const HamiltonianPair& pair, std::size_t grid_points) {
  if (grid_points < 2) throw InvalidArgument("gap scan needs at least two grid points");
  const auto dim = pair.h0.rows();
  const auto n = static_cast<Eigen::Index>(pair.n);
  const ComplexMatrix dh = pair.h1 - pair.h0;  // dH/ds for f(s) = s

  // (b, 0) is the zero vector of H0 that the evolution starts from.
  ComplexVector v0 = ComplexVector::Zero(dim);
  {
    // H0 = [[0, Q_b], [Q_b, 0]] and b spans ker Q_b, the bottom of its spectrum.
    const EigenDecomposition eq = hermitian_eig(pair.h0.topRightCorner(n, n));
    v0.head(n) = eq.vectors.col(0);
  }

  std::vector<GapPoint> out;
  out.reserve(grid_points);
  for (std::size_t g = 0; g < grid_points; ++g) {
    const double s = static_cast<double>(g) / static_cast<double>(grid_points - 1);
    const EigenDecomposition eig = hermitian_eig(interpolate(pair, s));

    std::vector<Eigen::Index> order(static_cast<std::size_t>(dim));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
      return std::abs(eig.values(a)) < std::abs(eig.values(b));
    });

    // Maximal-overlap continuation of v0 inside the kernel.
    ComplexVector proj = ComplexVector::Zero(dim);
    for (Eigen::Index k = 0; k < kKernelDim; ++k) {
      const auto col = eig.vectors.col(order[static_cast<std::size_t>(k)]);
      proj += col * col.dot(v0);
    }
    if (proj.norm() > 0.0) v0 = proj / proj.norm();

    GapPoint pt;
    pt.s = s;
    pt.gap = std::abs(eig.values(order[kKernelDim]));
    pt.flagged = pt.gap < 1e-12;
    if (!pt.flagged) {
      // The spectrum is symmetric, so +gap and -gap both border the kernel.
      double worst = 0.0;
      for (Eigen::Index k = kKernelDim; k < dim; ++k) {
        const Eigen::Index idx = order[static_cast<std::size_t>(k)];
        if (std::abs(std::abs(eig.values(idx)) - pt.gap) > 1e-9) break;
        worst = std::max(worst, std::abs(eig.vectors.col(idx).dot(dh * v0)));
      }
      pt.criterion = worst / (pt.gap * pt.gap);
    }
    out.push_back(pt);
  }
  return out;
}

void write_gap_csv(std::ostream& os, const std::vector<GapPoint>& points) {
  os << "s,gap,criterion\n";
  char buf[128];
  for (const GapPoint& p : points) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", p.s, p.gap, p.criterion);
    os << buf;
  }
}

}  // namespace adialin
