#include <doctest.h>

#include <random>
#include <sstream>

#include "adialin/block_encoding.hpp"
#include "adialin/error.hpp"
#include "adialin/simulator.hpp"
#include "oracles.hpp"

using namespace adialin;

TEST_SUITE("simulator") {
  TEST_CASE("Hadamard and RotY on |0>") {
    StateVector s(1);
    apply_gate(s, Gate::hadamard(0));
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(s.amplitudes()(0) - r) < 1e-15);
    CHECK(std::abs(s.amplitudes()(1) - r) < 1e-15);

    StateVector t(1);
    apply_gate(t, Gate::rot_y(0, M_PI));
    CHECK(std::abs(t.amplitudes()(0)) < 1e-15);
    CHECK(std::abs(t.amplitudes()(1) - 1.0) < 1e-15);
  }

  TEST_CASE("qubit 0 is the most significant bit") {
    StateVector s(3);
    apply_gate(s, Gate::pauli_x(0));
    CHECK(std::abs(s.amplitudes()(4) - 1.0) < 1e-15);
    apply_gate(s, Gate::pauli_x(2));
    CHECK(std::abs(s.amplitudes()(5) - 1.0) < 1e-15);
  }

  TEST_CASE("controls and swap") {
    StateVector s(2);
    apply_gate(s, Gate::rot_y(1, M_PI, {{0, true}}));
    CHECK(std::abs(s.amplitudes()(0) - 1.0) < 1e-15);  // control not satisfied
    apply_gate(s, Gate::rot_y(1, M_PI, {{0, false}}));
    CHECK(std::abs(s.amplitudes()(1) - 1.0) < 1e-15);
    apply_gate(s, Gate::swap(0, 1));
    CHECK(std::abs(s.amplitudes()(2) - 1.0) < 1e-15);
  }

  TEST_CASE("gate validation") {
    StateVector s(2);
    CHECK_THROWS_AS(apply_gate(s, Gate::hadamard(2)), InvalidArgument);
    CHECK_THROWS_AS(apply_gate(s, Gate::swap(1, 1)), InvalidArgument);
    CHECK_THROWS_AS(apply_gate(s, Gate::rot_y(0, 1.0, {{0, true}})), InvalidArgument);
    CHECK_THROWS_AS(apply_gate(s, Gate::rot_y(0, std::nan(""))), InvalidArgument);
  }

  TEST_CASE("random 6-qubit circuit matches the dense unitary and keeps its norm") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> kind(0, 5);
    std::uniform_int_distribution<std::size_t> q(0, 5);
    std::uniform_real_distribution<double> ang(-M_PI, M_PI);
    std::vector<Gate> gates;
    while (gates.size() < 500) {
      const std::size_t a = q(rng);
      std::size_t b = q(rng);
      switch (kind(rng)) {
        case 0: gates.push_back(Gate::hadamard(a)); break;
        case 1: gates.push_back(Gate::pauli_x(a)); break;
        case 2: gates.push_back(Gate::pauli_y(a)); break;
        case 3: gates.push_back(Gate::pauli_z(a)); break;
        case 4:
          if (a == b) b = (a + 1) % 6;
          gates.push_back(Gate::rot_y(a, ang(rng), {{b, (rng() & 1) != 0}}));
          break;
        default:
          if (a == b) b = (a + 1) % 6;
          gates.push_back(Gate::swap(a, b));
      }
    }
    StateVector s(6);
    std::normal_distribution<double> g;
    for (Eigen::Index i = 0; i < 64; ++i) s.amplitudes()(i) = Complex(g(rng), g(rng));
    s.normalize();
    const ComplexVector start = s.amplitudes();
    for (const Gate& gate : gates) {
      apply_gate(s, gate);
      CHECK(std::abs(s.norm() - 1.0) < 1e-10);
    }
    const ComplexMatrix u = circuit_unitary(6, gates);
    CHECK((u * start - s.amplitudes()).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(max_abs(u.adjoint() * u - ComplexMatrix::Identity(64, 64)) < 1e-10);
  }

  TEST_CASE("prepare_state") {
    RealVector e0 = RealVector::Zero(4);
    e0(0) = 1.0;
    const StateVector s = prepare_state(e0);
    CHECK(s.qubit_count() == 2);
    CHECK(s.amplitudes()(0) == Complex(1.0));
    RealVector plus(2);
    plus << 1.0, 1.0;
    plus /= std::sqrt(2.0);
    std::mt19937_64 rng(0);
    const RealVector p = measure_probabilities(prepare_state(plus), NoiseConfig{}, rng);
    CHECK(p(0) == doctest::Approx(0.5));
    CHECK(p(1) == doctest::Approx(0.5));
    CHECK_THROWS_AS(prepare_state(2.0 * plus), InvalidArgument);
    CHECK_THROWS_AS(prepare_state(RealVector::Ones(3).normalized()), InvalidArgument);
  }

  TEST_CASE("post-selection") {
    RealVector phi(2);
    phi << 0.6, 0.8;
    const StateVector sys = prepare_state(phi);
    const StateVector full = with_leading_ancillas(sys, 1);
    const std::vector<std::size_t> anc{0};
    const PostSelection ps = postselect_ancillas(full, anc);
    CHECK(ps.success_probability == doctest::Approx(1.0));
    CHECK((ps.state.amplitudes() - sys.amplitudes()).norm() < 1e-15);

    StateVector flipped = full;
    apply_gate(flipped, Gate::pauli_x(0));
    CHECK_THROWS_AS(postselect_ancillas(flipped, anc), VanishingPostSelectionError);
    CHECK_THROWS_AS(postselect_ancillas(full, std::vector<std::size_t>{}), InvalidArgument);
  }

  TEST_CASE("U_A on |0^m>|v> post-selects to M v") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (std::size_t n : {1u, 2u, 3u}) {
      const auto d = Eigen::Index{1} << n;
      for (int t = 0; t < 5; ++t) {
        RealMatrix m(d, d);
        RealVector v(d);
        for (Eigen::Index i = 0; i < d; ++i) {
          v(i) = u(rng);
          for (Eigen::Index j = 0; j < d; ++j) m(i, j) = u(rng);
        }
        v.normalize();
        const BlockEncodedOperator op = assemble_ua(m);
        StateVector s = with_leading_ancillas(prepare_state(v), op.ancilla_count());
        run_circuit(s, op.gates);
        const PostSelection ps = postselect_ancillas(s, op.ancilla_qubits());
        const RealVector mv = m * v;
        CHECK(ps.success_probability == doctest::Approx(mv.squaredNorm() / double(d * d)).epsilon(1e-10));
        CHECK((ps.state.amplitudes() - mv.normalized().cast<Complex>()).cwiseAbs().maxCoeff() < 1e-10);
      }
    }
  }

  TEST_CASE("exact measurement is the Born rule") {
    StateVector s(3);
    std::mt19937_64 rng(2);
    std::normal_distribution<double> g;
    for (Eigen::Index i = 0; i < 8; ++i) s.amplitudes()(i) = Complex(g(rng), g(rng));
    s.normalize();
    const RealVector p = measure_probabilities(s, NoiseConfig{}, rng);
    CHECK(std::abs(p.sum() - 1.0) < 1e-12);
    CHECK((p - s.amplitudes().cwiseAbs2()).cwiseAbs().maxCoeff() < 1e-15);
    StateVector zero(1);
    const RealVector pz = measure_probabilities(zero, NoiseConfig{}, rng);
    CHECK(pz(0) == 1.0);
    CHECK(pz(1) == 0.0);
  }

  TEST_CASE("Gaussian measurement noise has the configured spread") {
    StateVector s(2);
    for (Eigen::Index i = 0; i < 4; ++i) s.amplitudes()(i) = 0.5;
    const NoiseConfig noise{NoiseModel::measurement_gaussian, 0.001, std::nullopt};
    std::mt19937_64 rng(77);
    const int reps = 10000;
    RealVector sum = RealVector::Zero(4);
    RealVector sq = RealVector::Zero(4);
    for (int r = 0; r < reps; ++r) {
      const RealVector p = measure_probabilities(s, noise, rng);
      CHECK(std::abs(p.sum() - 1.0) < 1e-12);
      sum += p;
      sq += (p.array() - 0.25).square().matrix();
    }
    for (Eigen::Index i = 0; i < 4; ++i) {
      CHECK(std::abs(sum(i) / reps - 0.25) < 1e-4);
      // Renormalization removes one degree of freedom: std = sigma * sqrt(3/4).
      const double expected = 0.001 * std::sqrt(0.75);
      CHECK(std::sqrt(sq(i) / reps) == doctest::Approx(expected).epsilon(0.05));
    }
  }

  TEST_CASE("finite shots give multinomial frequencies") {
    RealVector v(2);
    v << std::sqrt(0.3), std::sqrt(0.7);
    NoiseConfig noise;
    noise.shots = 20000;
    std::mt19937_64 rng(4);
    const RealVector p = measure_probabilities(prepare_state(v), noise, rng);
    CHECK(p.sum() == doctest::Approx(1.0));
    CHECK(std::abs(p(0) - 0.3) < 0.015);
    CHECK(std::abs(p(0) * 20000 - std::round(p(0) * 20000)) < 1e-9);
    NoiseConfig bad;
    bad.shots = 0;
    CHECK_THROWS_AS(bad.validate(), InvalidArgument);
    CHECK_THROWS_AS((NoiseConfig{NoiseModel::measurement_gaussian, -1.0, {}}).validate(), InvalidArgument);
  }

  TEST_CASE("depolarizing trajectories") {
    std::mt19937_64 rng(9);
    StateVector s(3);
    for (int r = 0; r < 100; ++r) CHECK_FALSE(apply_depolarizing(s, 0.0, rng));
    CHECK(std::abs(s.amplitudes()(0) - 1.0) < 1e-15);

    int changed = 0;
    const int reps = 30000;
    for (int r = 0; r < reps; ++r) {
      StateVector one(1);
      apply_depolarizing(one, 1.0, rng);
      changed += std::abs(one.amplitudes()(0)) < 0.5;
    }
    CHECK(double(changed) / reps == doctest::Approx(2.0 / 3.0).epsilon(0.02));

    const double p = 0.001;
    const int seeds = 10000;
    int hits = 0;
    for (int k = 0; k < seeds; ++k) {
      std::mt19937_64 r(static_cast<std::uint64_t>(k));
      StateVector t(2);
      hits += apply_depolarizing(t, p, r);
    }
    CHECK(std::abs(double(hits) / seeds - p) <= 3.0 * std::sqrt(p / seeds));
    CHECK_THROWS_AS(apply_depolarizing(s, 1.5, rng), InvalidArgument);
  }

  TEST_CASE("noise model names") {
    for (NoiseModel m : {NoiseModel::none, NoiseModel::measurement_gaussian, NoiseModel::depolarizing})
      CHECK(parse_noise_model(noise_model_name(m)) == m);
    CHECK_THROWS_AS(parse_noise_model("thermal"), InvalidArgument);
  }

  TEST_CASE("depth and program dump") {
    std::vector<Gate> g{Gate::hadamard(0), Gate::hadamard(1), Gate::swap(0, 1),
                        Gate::rot_y(2, 0.5, {{0, true}, {1, false}})};
    CHECK(circuit_depth(3, g) == 3);
    std::ostringstream os;
    write_program(os, g);
    const std::string text = os.str();
    CHECK(text.find("SWAP 0 1") != std::string::npos);
    CHECK(text.find("RY 2") != std::string::npos);
    CHECK(std::count(text.begin(), text.end(), '\n') == 4);
  }
}
