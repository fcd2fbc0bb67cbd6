#pragma once

#include <cstdint>
#include <filesystem>

#include <json.hpp>

#include "adialin/numerics.hpp"

namespace adialin {

/// A normalized real SPD system A x = b: ||A||_2 = 1, ||b||_2 = 1, dim a power of two.
struct LinearSystemInstance {
  std::size_t dim = 0;
  double kappa_target = 1.0;
  std::uint64_t seed = 0;
  RealMatrix a;
  RealVector b;
};

/// Random SPD instance with condition number exactly `kappa`.
///
/// Q is the (sign-fixed) QR factor of a Gaussian matrix, the spectrum is
/// log-spaced on [1/kappa, 1] with both endpoints pinned, and b is a
/// normalized Gaussian vector. Pure in (dim, kappa, seed).
LinearSystemInstance generate_instance(std::size_t dim, double kappa, std::uint64_t seed);

/// Scales A by its spectral norm and b by its length. Rejects non-symmetric,
/// non-positive-definite or non-power-of-two inputs and a zero b.
LinearSystemInstance normalize_system(const RealMatrix& a_raw, const RealVector& b_raw,
                                      std::uint64_t seed = 0);

/// [[0, A], [A^dagger, 0]].
ComplexMatrix hermitian_dilation(const ComplexMatrix& a);

/// Zero-pads a k x k matrix to the next power-of-two size.
RealMatrix pad_to_power_of_two(const RealMatrix& a);

/// Checks every LinearSystemInstance invariant, throwing InvalidArgument.
void validate_instance(const LinearSystemInstance& inst);

nlohmann::json instance_to_json(const LinearSystemInstance& inst);
LinearSystemInstance instance_from_json(const nlohmann::json& j);
void save_instance(const LinearSystemInstance& inst, const std::filesystem::path& path);
LinearSystemInstance load_instance(const std::filesystem::path& path);

}  // namespace adialin
