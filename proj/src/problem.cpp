#include "adialin/problem.hpp"

#include <cmath>
#include <fstream>
#include <random>

#include "adialin/error.hpp"

namespace adialin {

namespace {

void require_dim(std::size_t dim) {
  if (dim < 2 || !is_power_of_two(dim)) {
    throw InvalidArgument("dimension must be a power of two >= 2, got " + std::to_string(dim));
  }
}

}  // namespace

LinearSystemInstance generate_instance(std::size_t dim, double kappa, std::uint64_t seed) {
  require_dim(dim);
  if (!(kappa >= 1.0) || !std::isfinite(kappa)) {
    throw InvalidArgument("kappa must be finite and >= 1, got " + std::to_string(kappa));
  }
  const auto n = static_cast<Eigen::Index>(dim);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  RealMatrix g(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) g(r, c) = gauss(rng);
  Eigen::HouseholderQR<RealMatrix> qr(g);
  RealMatrix q = qr.householderQ() * RealMatrix::Identity(n, n);
  const RealMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index c = 0; c < n; ++c) {
    if (r(c, c) < 0.0) q.col(c) *= -1.0;
  }

  RealVector lambda(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double frac = static_cast<double>(i) / static_cast<double>(n - 1);
    lambda(i) = std::pow(kappa, frac - 1.0);  // kappa^-1 ... kappa^0
  }
  lambda(0) = 1.0 / kappa;
  lambda(n - 1) = 1.0;

  RealMatrix a = q * lambda.asDiagonal() * q.transpose();
  a = 0.5 * (a + a.transpose()).eval();

  RealVector b(n);
  for (Eigen::Index i = 0; i < n; ++i) b(i) = gauss(rng);
  b /= b.norm();

  LinearSystemInstance inst;
  inst.dim = dim;
  inst.kappa_target = kappa;
  inst.seed = seed;
  inst.a = std::move(a);
  inst.b = std::move(b);
  return inst;
}

LinearSystemInstance normalize_system(const RealMatrix& a_raw, const RealVector& b_raw,
                                      std::uint64_t seed) {
  if (a_raw.rows() != a_raw.cols()) throw InvalidArgument("A must be square");
  require_dim(static_cast<std::size_t>(a_raw.rows()));
  if (b_raw.size() != a_raw.rows()) throw InvalidArgument("b length does not match A");
  if (!a_raw.allFinite() || !b_raw.allFinite()) throw InvalidArgument("non-finite entries");
  const double bnorm = b_raw.norm();
  if (bnorm == 0.0) throw InvalidArgument("b must be nonzero");
  const double scale = std::max(1.0, a_raw.cwiseAbs().maxCoeff());
  if ((a_raw - a_raw.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw InvalidArgument("A must be symmetric");
  }
  const RealMatrix sym = 0.5 * (a_raw + a_raw.transpose());
  Eigen::SelfAdjointEigenSolver<RealMatrix> eig(sym, Eigen::EigenvaluesOnly);
  const double lmin = eig.eigenvalues()(0);
  const double lmax = eig.eigenvalues()(eig.eigenvalues().size() - 1);
  if (!(lmin > 0.0)) throw InvalidArgument("A must be positive definite");

  LinearSystemInstance inst;
  inst.dim = static_cast<std::size_t>(a_raw.rows());
  inst.a = sym / lmax;  // SPD: spectral norm is the top eigenvalue
  inst.b = b_raw / bnorm;
  inst.kappa_target = lmax / lmin;
  inst.seed = seed;
  return inst;
}

ComplexMatrix hermitian_dilation(const ComplexMatrix& a) {
  const Eigen::Index r = a.rows();
  const Eigen::Index c = a.cols();
  ComplexMatrix out = ComplexMatrix::Zero(r + c, r + c);
  out.topRightCorner(r, c) = a;
  out.bottomLeftCorner(c, r) = a.adjoint();
  return out;
}

RealMatrix pad_to_power_of_two(const RealMatrix& a) {
  if (a.rows() != a.cols()) throw InvalidArgument("padding needs a square matrix");
  std::size_t n = 1;
  while (n < static_cast<std::size_t>(a.rows())) n <<= 1;
  const auto m = static_cast<Eigen::Index>(n);
  RealMatrix out = RealMatrix::Zero(m, m);
  out.topLeftCorner(a.rows(), a.cols()) = a;
  return out;
}

void validate_instance(const LinearSystemInstance& inst) {
  require_dim(inst.dim);
  const auto n = static_cast<Eigen::Index>(inst.dim);
  if (inst.a.rows() != n || inst.a.cols() != n || inst.b.size() != n) {
    throw InvalidArgument("instance shapes do not match dim");
  }
  if ((inst.a - inst.a.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw InvalidArgument("instance A is not symmetric");
  }
  if (std::abs(inst.b.norm() - 1.0) > 1e-12) throw InvalidArgument("instance b is not unit");
  Eigen::SelfAdjointEigenSolver<RealMatrix> eig(inst.a, Eigen::EigenvaluesOnly);
  if (!(eig.eigenvalues()(0) > 0.0)) throw InvalidArgument("instance A is not positive definite");
  if (std::abs(eig.eigenvalues()(n - 1) - 1.0) > 1e-10) {
    throw InvalidArgument("instance A does not have unit spectral norm");
  }
}

nlohmann::json instance_to_json(const LinearSystemInstance& inst) {
  nlohmann::json j;
  j["dim"] = inst.dim;
  j["kappa"] = inst.kappa_target;
  j["seed"] = inst.seed;
  std::vector<double> a;
  a.reserve(inst.dim * inst.dim);
  for (Eigen::Index r = 0; r < inst.a.rows(); ++r)
    for (Eigen::Index c = 0; c < inst.a.cols(); ++c) a.push_back(inst.a(r, c));
  j["A"] = a;
  j["b"] = std::vector<double>(inst.b.data(), inst.b.data() + inst.b.size());
  return j;
}

LinearSystemInstance instance_from_json(const nlohmann::json& j) {
  for (const char* key : {"dim", "A", "b"}) {
    if (!j.contains(key)) throw InvalidArgument(std::string("instance JSON missing \"") + key + "\"");
  }
  const auto dim = j.at("dim").get<std::size_t>();
  const auto a = j.at("A").get<std::vector<double>>();
  const auto b = j.at("b").get<std::vector<double>>();
  if (a.size() != dim * dim || b.size() != dim) {
    throw InvalidArgument("instance JSON arrays do not match dim");
  }
  const auto n = static_cast<Eigen::Index>(dim);
  LinearSystemInstance inst;
  inst.dim = dim;
  inst.a = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      a.data(), n, n);
  inst.b = Eigen::Map<const RealVector>(b.data(), n);
  inst.seed = j.value("seed", std::uint64_t{0});
  inst.kappa_target = j.value("kappa", 0.0);
  // Files written by hand may not be normalized; re-normalize in that case.
  const bool normalized = std::abs(inst.b.norm() - 1.0) <= 1e-12 &&
                          (inst.a - inst.a.transpose()).cwiseAbs().maxCoeff() <= 1e-12 &&
                          std::abs(spectral_norm(inst.a.cast<Complex>()) - 1.0) <= 1e-10;
  if (!normalized || inst.kappa_target < 1.0) {
    return normalize_system(inst.a, inst.b, inst.seed);
  }
  validate_instance(inst);
  return inst;
}

void save_instance(const LinearSystemInstance& inst, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write instance file " + path.string());
  out << instance_to_json(inst).dump(2) << '\n';
}

LinearSystemInstance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read instance file " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument("malformed instance JSON: " + std::string(e.what()));
  }
  return instance_from_json(j);
}

}  // namespace adialin
