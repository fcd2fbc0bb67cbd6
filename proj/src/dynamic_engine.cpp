#include "adialin/dynamic_engine.hpp"

#include <chrono>
#include <cmath>
#include <random>

#include "adialin/block_encoding.hpp"
#include "adialin/error.hpp"

namespace adialin {

namespace {

int sgn(double x) noexcept { return x >= 0.0 ? 1 : -1; }

// Abstract state-preparation unit counted in every segment.
constexpr std::size_t kStatePrepDepth = 1;

std::size_t segment_depth_of(const BlockEncodedOperator& op) {
  return circuit_depth(op.qubit_count(), op.gates) + kStatePrepDepth;
}

std::size_t segment_depth_for_size(std::size_t size) {
  // Depth depends only on the register layout, not the encoded entries.
  return segment_depth_of(assemble_ua(RealMatrix::Identity(static_cast<Eigen::Index>(size),
                                                           static_cast<Eigen::Index>(size))));
}

}  // namespace

std::string engine_name(Engine engine) {
  return engine == Engine::circuit ? "circuit" : "dense";
}

Engine parse_engine(const std::string& name) {
  if (name == "circuit") return Engine::circuit;
  if (name == "dense") return Engine::dense;
  throw InvalidArgument("unknown engine \"" + name + "\"");
}

std::string sign_rule_name(SignRule rule) {
  switch (rule) {
    case SignRule::extrapolate: return "extrapolate";
    case SignRule::history_checked: return "history_checked";
    case SignRule::curvature_checked: return "curvature_checked";
  }
  return "extrapolate";
}

SignRule parse_sign_rule(const std::string& name) {
  if (name == "extrapolate") return SignRule::extrapolate;
  if (name == "history_checked") return SignRule::history_checked;
  if (name == "curvature_checked") return SignRule::curvature_checked;
  throw InvalidArgument("unknown sign rule \"" + name + "\"");
}

std::vector<int> predict_signs(const RealVector& x_prev, const RealVector& x_prev2,
                               const RealVector& magnitudes, double delta, SignRule rule,
                               const RealVector* x_prev3) {
  if (x_prev.size() != x_prev2.size() || x_prev.size() != magnitudes.size()) {
    throw InvalidArgument("predict_signs: length mismatch");
  }
  if (x_prev3 && x_prev3->size() != x_prev.size()) {
    throw InvalidArgument("predict_signs: length mismatch");
  }
  if (!(delta > 0.0)) throw InvalidArgument("predict_signs: delta must be > 0");
  const bool curved = rule == SignRule::curvature_checked && x_prev3 != nullptr;
  const Eigen::Index n = x_prev.size();
  std::vector<int> signs(static_cast<std::size_t>(n));
  const double step = (x_prev - x_prev2).norm();
  for (Eigen::Index i = 0; i < n; ++i) {
    const double x = x_prev(i);
    const double xp = x_prev2(i);
    int s = sgn(x);
    if (std::abs(x) < delta) {
      if (rule == SignRule::extrapolate) {
        s = sgn(2.0 * x - xp);
      } else {
        // Compare the candidate increments +m - x and -m - x against the
        // increment predicted from the recorded history and from the history
        // with the last record's sign flipped. curvature_checked adds the
        // last change in increment to the prediction.
        const double xpp = curved ? (*x_prev3)(i) : 0.0;
        auto increment = [&](double last) {
          const double d = last - xp;
          return curved ? d + (d - (xp - xpp)) : d;
        };
        const double m = magnitudes(i);
        const double cp = m - x;
        const double cm = -m - x;
        const double rec = increment(x);
        const double ep = std::abs(cp - rec);
        const double em = std::abs(cm - rec);
        s = ep <= em ? 1 : -1;
        const double best = std::min(ep, em);
        if (std::abs(-x - xp) <= step) {
          const double flip = increment(-x);
          const double fp = std::abs(cp - flip);
          const double fm = std::abs(cm - flip);
          if (std::min(fp, fm) < best) s = fp <= fm ? 1 : -1;
        }
      }
    }
    signs[static_cast<std::size_t>(i)] = s;
  }
  return signs;
}

double DeltaPolicy::resolve(const NoiseConfig& noise) const {
  const double d = fixed ? *fixed : std::max(floor, sigma_multiple * noise.measurement_sigma());
  if (!(d > 0.0)) throw InvalidArgument("delta must be > 0");
  return d;
}

EvolutionTrace run_segmented_solve(const LinearSystemInstance& inst, const Schedule& schedule,
                                   const SolveOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  validate_instance(inst);
  options.noise.validate();
  const HamiltonianPair pair = build_pair(inst);
  validate_schedule(schedule, pair);
  const double delta = options.delta.resolve(options.noise);

  const auto n = static_cast<Eigen::Index>(inst.dim);
  const Eigen::Index size = 2 * n;
  const std::size_t index_qubits = log2_exact(static_cast<std::size_t>(size));
  const double alpha = 1.0 / static_cast<double>(std::size_t{1} << index_qubits);
  const std::size_t depth = segment_depth_for_size(static_cast<std::size_t>(size));

  EvolutionTrace trace;
  trace.instance = inst;
  trace.schedule = schedule;
  if (options.keep_records) trace.records.reserve(schedule.steps);

  RealVector x = RealVector::Zero(size);
  x.head(n) = inst.b;
  RealVector x_prev2 = x;
  RealVector x_prev3 = x;
  bool have_prev3 = false;  // x_prev3 holds a measured step, not the seed

  for (std::size_t k = 1; k <= schedule.steps; ++k) {
    const RealMatrix r = step_operator_matrix(interpolate(pair, schedule.s_at(k)), schedule.dt);
    std::mt19937_64 rng(options.noise_seed + k);

    StateVector out(index_qubits);
    double success = 0.0;
    if (options.engine == Engine::circuit) {
      const BlockEncodedOperator op = assemble_ua(r);
      StateVector s = with_leading_ancillas(prepare_state(x), op.ancilla_count());
      if (options.noise.model == NoiseModel::depolarizing && options.noise.strength > 0.0) {
        for (const Gate& g : op.gates) {
          apply_gate(s, g);
          apply_depolarizing(s, options.noise.strength, rng);
        }
      } else {
        run_circuit(s, op.gates);
      }
      const std::vector<std::size_t> anc = op.ancilla_qubits();
      try {
        PostSelection ps = postselect_ancillas(s, anc);
        out = std::move(ps.state);
        success = ps.success_probability;
      } catch (const VanishingPostSelectionError& e) {
        throw VanishingPostSelectionError(e.probability(), k);
      }
    } else {
      const RealVector z = r * x;
      success = z.squaredNorm() * alpha * alpha;
      if (success < 1e-14) throw VanishingPostSelectionError(success, k);
      out = StateVector::from_amplitudes((z / z.norm()).cast<Complex>());
      if (options.noise.model == NoiseModel::depolarizing && options.noise.strength > 0.0) {
        apply_depolarizing(out, options.noise.strength, rng);
      }
    }

    const RealVector probs = measure_probabilities(out, options.noise, rng);
    const RealVector mags = probs.cwiseSqrt();

    std::vector<int> signs;
    if (k == 1 && options.classical_first_step) {
      const RealVector z = r * x;
      signs.resize(static_cast<std::size_t>(size));
      for (Eigen::Index i = 0; i < size; ++i) signs[static_cast<std::size_t>(i)] = sgn(z(i));
    } else {
      signs = predict_signs(x, x_prev2, mags, delta, options.sign_rule,
                            have_prev3 ? &x_prev3 : nullptr);
    }

    RealVector next(size);
    for (Eigen::Index i = 0; i < size; ++i) next(i) = signs[static_cast<std::size_t>(i)] * mags(i);
    next = renormalize(next);
    have_prev3 = k >= 2;
    x_prev3 = x_prev2;
    x_prev2 = x;
    x = next;

    if (options.keep_records) {
      trace.records.push_back({k, probs, std::move(signs), x, success, depth});
    }
  }

  trace.final_state = x;
  RealCoordinates rc{x.head(n), x.tail(n)};
  const SolveResult res = truncate_imaginary(rc);
  const RealVector xr = reference_solution(inst);
  trace.solution = res.solution;
  trace.imag_residual = res.imag_residual;
  trace.truncation_accepted = res.truncation_accepted;
  trace.fidelity = fidelity(xr, res.solution);
  RealVector xr_full = RealVector::Zero(size);
  xr_full.head(n) = xr;
  trace.fidelity_untruncated = fidelity(xr_full, x);
  if (options.record_wall_time) {
    trace.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  return trace;
}

DepthReport depth_report(const LinearSystemInstance& inst, const Schedule& schedule) {
  validate_instance(inst);
  if (schedule.steps < 1) throw InvalidArgument("steps must be >= 1");
  const HamiltonianPair pair = build_pair(inst);
  const BlockEncodedOperator op =
      assemble_ua(step_operator_matrix(interpolate(pair, schedule.s_at(1)), schedule.dt));
  DepthReport rep;
  rep.segment_depth = segment_depth_of(op);
  rep.dynamic_total = rep.segment_depth;
  rep.conventional_total = schedule.steps * rep.segment_depth;
  rep.qubit_count = op.qubit_count();
  rep.gate_count = op.gates.size();
  return rep;
}

}  // namespace adialin
