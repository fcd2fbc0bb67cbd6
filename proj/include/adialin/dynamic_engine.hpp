#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "adialin/hamiltonian.hpp"
#include "adialin/postprocess.hpp"
#include "adialin/simulator.hpp"

namespace adialin {

enum class Engine { circuit, dense };

std::string engine_name(Engine engine);
Engine parse_engine(const std::string& name);

enum class SignRule {
  /// Persistence above delta, linear extrapolation sgn(2 x_k - x_{k-1}) below.
  extrapolate,
  /// Like extrapolate, but below delta also weighs the hypothesis that the
  /// previous record's sign was wrong, accepted only when the implied jump is
  /// no larger than the last whole-vector step and fits the new magnitudes better.
  history_checked,
  /// history_checked with a constant-curvature prediction
  /// 3 x_k - 3 x_{k-1} + x_{k-2} in place of the linear one, so a component
  /// that touches zero and turns back is not mistaken for a crossing.
  curvature_checked,
};

std::string sign_rule_name(SignRule rule);
SignRule parse_sign_rule(const std::string& name);

/// Sign of each next-step component; sgn(0) = +1. `x_prev3` (step k-2) is
/// only read by curvature_checked, which falls back to the linear prediction
/// without it.
std::vector<int> predict_signs(const RealVector& x_prev, const RealVector& x_prev2,
                               const RealVector& magnitudes, double delta,
                               SignRule rule = SignRule::extrapolate,
                               const RealVector* x_prev3 = nullptr);

/// delta = fixed, or max(floor, sigma_multiple * sigma) for measurement noise sigma.
struct DeltaPolicy {
  std::optional<double> fixed;
  double floor = 0.01;
  double sigma_multiple = 3.0;

  double resolve(const NoiseConfig& noise) const;
};

struct SegmentRecord {
  std::size_t step = 0;
  RealVector probabilities;  // length 2N
  std::vector<int> signs;
  RealVector reconstructed;  // (u, v), unit norm
  double success_probability = 0.0;
  std::size_t segment_depth = 0;
};

struct SolveOptions {
  Engine engine = Engine::dense;
  NoiseConfig noise;
  DeltaPolicy delta;
  SignRule sign_rule = SignRule::curvature_checked;
  /// Take the first segment's signs from the classically computed R_1 (b, 0).
  bool classical_first_step = true;
  std::uint64_t noise_seed = 0;  // step k draws from mt19937_64(noise_seed + k)
  bool keep_records = true;
  bool record_wall_time = true;
};

struct EvolutionTrace {
  LinearSystemInstance instance;
  Schedule schedule;
  std::vector<SegmentRecord> records;
  RealVector final_state;  // (u, v)
  RealVector solution;     // renormalized u
  double fidelity = 0.0;
  double fidelity_untruncated = 0.0;  // against (x_r, 0) over the full state
  double imag_residual = 0.0;
  bool truncation_accepted = false;
  double wall_ms = 0.0;
};

/// Segmented solve: each step encodes R_k, evolves the current real vector,
/// post-selects, measures magnitudes, predicts signs and re-encodes.
EvolutionTrace run_segmented_solve(const LinearSystemInstance& inst, const Schedule& schedule,
                                   const SolveOptions& options = {});

struct DepthReport {
  std::size_t segment_depth = 0;  // one segment, state preparation included
  std::size_t dynamic_total = 0;
  std::size_t conventional_total = 0;
  std::size_t qubit_count = 0;
  std::size_t gate_count = 0;  // excluding state preparation
};

DepthReport depth_report(const LinearSystemInstance& inst, const Schedule& schedule);

}  // namespace adialin
