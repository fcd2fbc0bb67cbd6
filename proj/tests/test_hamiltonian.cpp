#include <doctest.h>

#include <sstream>

#include "adialin/error.hpp"
#include "adialin/hamiltonian.hpp"
#include "oracles.hpp"

using namespace adialin;

namespace {

LinearSystemInstance diag_instance() {
  RealMatrix a = RealMatrix::Zero(2, 2);
  a(0, 0) = 1.0;
  a(1, 1) = 0.5;
  RealVector b(2);
  b << 1.0, 0.0;
  return normalize_system(a, b);
}

}  // namespace

TEST_SUITE("hamiltonian") {
  TEST_CASE("projector examples") {
    RealVector e0(2);
    e0 << 1.0, 0.0;
    const ComplexMatrix q0 = projector_qb(e0);
    CHECK(q0(0, 0) == Complex(0.0));
    CHECK(q0(1, 1) == Complex(1.0));
    CHECK(q0(0, 1) == Complex(0.0));

    RealVector d(2);
    d << 1.0, 1.0;
    d /= std::sqrt(2.0);
    const ComplexMatrix q1 = projector_qb(d);
    CHECK(std::abs(q1(0, 0) - 0.5) < 1e-15);
    CHECK(std::abs(q1(0, 1) + 0.5) < 1e-15);

    RealVector bad(2);
    bad << 1.0, 1.0;
    CHECK_THROWS_AS(projector_qb(bad), InvalidArgument);
  }

  TEST_CASE("projector properties on random b") {
    const LinearSystemInstance inst = generate_instance(8, 10.0, 4);
    const ComplexMatrix q = projector_qb(inst.b);
    CHECK(max_abs(q * q - q) < 1e-12);
    CHECK((q * inst.b.cast<Complex>()).cwiseAbs().maxCoeff() < 1e-12);
    const EigenDecomposition e = hermitian_eig(q);
    CHECK(std::abs(e.values(0)) < 1e-12);
    for (Eigen::Index i = 1; i < 8; ++i) CHECK(std::abs(e.values(i) - 1.0) < 1e-12);
  }

  TEST_CASE("A = I makes H1 equal H0") {
    RealVector b(4);
    b << 0.5, -0.5, 0.5, 0.5;
    const LinearSystemInstance inst = normalize_system(RealMatrix::Identity(4, 4), b);
    const HamiltonianPair p = build_pair(inst);
    CHECK(p.h0 == p.h1);
  }

  TEST_CASE("diagonal example blocks") {
    const HamiltonianPair p = build_pair(diag_instance());
    const ComplexMatrix ur = p.h1.topRightCorner(2, 2);
    CHECK(std::abs(ur(0, 0)) < 1e-15);
    CHECK(std::abs(ur(0, 1)) < 1e-15);
    CHECK(std::abs(ur(1, 0)) < 1e-15);
    CHECK(std::abs(ur(1, 1) - 0.5) < 1e-15);
    CHECK(max_abs(p.h1.bottomLeftCorner(2, 2) - ur) < 1e-15);
  }

  TEST_CASE("pair matches the block oracle and has the expected null vectors") {
    for (std::size_t dim : {2u, 4u, 8u, 16u}) {
      const LinearSystemInstance inst = generate_instance(dim, 30.0, dim);
      const HamiltonianPair p = build_pair(inst);
      const auto n = static_cast<Eigen::Index>(dim);
      CHECK(hermiticity_defect(p.h0) < 1e-12);
      CHECK(hermiticity_defect(p.h1) < 1e-12);
      CHECK(max_abs(p.h0 - oracle::hamiltonian(inst.a, inst.b, 0.0)) < 1e-14);
      CHECK(max_abs(p.h1 - oracle::hamiltonian(inst.a, inst.b, 1.0)) < 1e-14);

      ComplexVector b0 = ComplexVector::Zero(2 * n);
      b0.head(n) = inst.b.cast<Complex>();
      CHECK((p.h0 * b0).norm() < 1e-10);
      ComplexVector zb = ComplexVector::Zero(2 * n);
      zb.tail(n) = inst.b.cast<Complex>();
      CHECK((p.h0 * zb).norm() < 1e-10);
      CHECK((p.h1 * zb).norm() < 1e-10);
      ComplexVector x0 = ComplexVector::Zero(2 * n);
      x0.head(n) = oracle::solve_direction(inst.a, inst.b).cast<Complex>();
      CHECK((p.h1 * x0).norm() < 1e-10);
    }
  }

  TEST_CASE("interpolation") {
    const HamiltonianPair p = build_pair(generate_instance(4, 10.0, 2));
    CHECK(interpolate(p, 0.0) == p.h0);
    CHECK(interpolate(p, 1.0) == p.h1);
    CHECK(max_abs(interpolate(p, 0.5) - (p.h0 + p.h1) / 2.0) < 1e-15);
    CHECK(max_abs(interpolate(p, 0.4) - (interpolate(p, 0.2) + interpolate(p, 0.6)) / 2.0) < 1e-15);
    CHECK_THROWS_AS(interpolate(p, -0.1), InvalidArgument);
    CHECK_THROWS_AS(interpolate(p, 1.5), InvalidArgument);
  }

  TEST_CASE("spectrum is symmetric with a kernel for every s") {
    const LinearSystemInstance inst = generate_instance(8, 50.0, 6);
    const HamiltonianPair p = build_pair(inst);
    for (double s : {0.0, 0.13, 0.5, 0.77, 1.0}) {
      const EigenDecomposition e = hermitian_eig(interpolate(p, s));
      const Eigen::Index m = e.values.size();
      for (Eigen::Index i = 0; i < m; ++i) CHECK(std::abs(e.values(i) + e.values(m - 1 - i)) < 1e-10);
      CHECK(e.values.cwiseAbs().minCoeff() < 1e-10);
    }
  }

  TEST_CASE("schedule guard") {
    const HamiltonianPair p = build_pair(generate_instance(4, 10.0, 1));
    CHECK_NOTHROW(validate_schedule(Schedule{100, 0.1}, p));
    CHECK_THROWS_AS(validate_schedule(Schedule{100, 5.0}, p), ScheduleGuardError);
    CHECK_THROWS_AS(validate_schedule(Schedule{0, 0.1}, p), InvalidArgument);
    CHECK_THROWS_AS(validate_schedule(Schedule{10, -0.1}, p), InvalidArgument);
    const Schedule s{200, 0.03};
    CHECK(s.total_time() == doctest::Approx(6.0));
    CHECK(s.s_at(200) == 1.0);
    CHECK(s.s_at(0) == 0.0);
  }

  TEST_CASE("gap scan for A = I is flat") {
    RealVector b(2);
    b << 0.6, 0.8;
    const HamiltonianPair p = build_pair(normalize_system(RealMatrix::Identity(2, 2), b));
    const std::vector<GapPoint> pts = gap_scan(p, 11);
    REQUIRE(pts.size() == 11);
    for (const GapPoint& g : pts) {
      CHECK(g.gap == doctest::Approx(1.0));
      CHECK(g.criterion == doctest::Approx(0.0));
      CHECK_FALSE(g.flagged);
    }
    CHECK_THROWS_AS(gap_scan(p, 1), InvalidArgument);
  }

  TEST_CASE("gap scan agrees with per-point eigenvalues") {
    const LinearSystemInstance inst = generate_instance(4, 10.0, 13);
    const HamiltonianPair p = build_pair(inst);
    const std::vector<GapPoint> pts = gap_scan(p, 21);
    CHECK(pts.front().gap == doctest::Approx(1.0));
    for (const GapPoint& g : pts) {
      Eigen::SelfAdjointEigenSolver<oracle::CM> es(oracle::hamiltonian(inst.a, inst.b, g.s));
      std::vector<double> mags;
      for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) mags.push_back(std::abs(es.eigenvalues()(i)));
      std::sort(mags.begin(), mags.end());
      CHECK(mags[0] < 1e-10);
      CHECK(mags[1] < 1e-10);
      CHECK(std::abs(g.gap - mags[2]) < 1e-10);
      CHECK(g.criterion >= 0.0);
    }
    std::ostringstream os;
    write_gap_csv(os, pts);
    CHECK(os.str().rfind("s,gap,criterion\n", 0) == 0);
  }
}
