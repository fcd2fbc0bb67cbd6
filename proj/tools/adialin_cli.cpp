#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "adialin/bench.hpp"
#include "adialin/block_encoding.hpp"
#include "adialin/dynamic_engine.hpp"
#include "adialin/error.hpp"
#include "adialin/hamiltonian.hpp"
#include "adialin/problem.hpp"
#include "adialin/reference_evolution.hpp"

namespace {

using namespace adialin;

struct InstanceArgs {
  std::size_t dim = 2;
  double kappa = 10.0;
  std::uint64_t seed = 1;
  std::string instance_file;

  void add(CLI::App* app) {
    app->add_option("--dim", dim, "System dimension (power of two)");
    app->add_option("--kappa", kappa, "Condition number of the generated instance");
    app->add_option("--seed", seed, "Instance seed");
    app->add_option("--instance", instance_file, "Load the instance from a JSON file instead");
  }

  LinearSystemInstance make() const {
    if (!instance_file.empty()) return load_instance(instance_file);
    return generate_instance(dim, kappa, seed);
  }
};

struct NoiseArgs {
  std::string model = "none";
  double strength = 0.0;
  std::size_t shots = 0;

  void add(CLI::App* app) {
    app->add_option("--noise-model", model, "none | measurement_gaussian | depolarizing");
    app->add_option("--noise-strength", strength, "Gaussian sigma or depolarizing probability");
    app->add_option("--shots", shots, "Finite shot count (0 = exact probabilities)");
  }

  NoiseConfig make() const {
    NoiseConfig n;
    n.model = parse_noise_model(model);
    n.strength = strength;
    if (shots > 0) n.shots = shots;
    return n;
  }
};

void print_depth(const DepthReport& d) {
  std::printf("segment_depth=%zu\ndynamic_total=%zu\nconventional_total=%zu\nqubits=%zu\n",
              d.segment_depth, d.dynamic_total, d.conventional_total, d.qubit_count);
}

int run_verify_encoding(std::size_t n, std::size_t trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> entry(-1.0, 1.0);
  const auto dim = Eigen::Index{1} << n;
  double worst_block = 0.0;
  double worst_unitary = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    RealMatrix m(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
      for (Eigen::Index j = 0; j < dim; ++j) m(i, j) = entry(rng);
    const BlockEncodedOperator op = assemble_ua(m);
    const ComplexMatrix block = extract_encoded_block(op);
    worst_block = std::max(worst_block, max_abs(block - op.alpha * m.cast<Complex>()));
    const ComplexMatrix u = op.unitary();
    const ComplexMatrix gram = u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols());
    worst_unitary = std::max(worst_unitary, max_abs(gram));
  }
  const bool ok = worst_block < 1e-10 && worst_unitary < 1e-10;
  std::printf("n=%zu trials=%zu max_block_error=%.3e max_unitarity_error=%.3e %s\n", n, trials,
              worst_block, worst_unitary, ok ? "PASS" : "FAIL");
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamic-circuit discrete adiabatic linear solver simulator"};
  app.require_subcommand(1);

  // solve
  auto* solve = app.add_subcommand("solve", "Run one segmented solve");
  InstanceArgs solve_inst;
  NoiseArgs solve_noise;
  std::size_t solve_steps = 1000;
  double solve_dt = kDefaultDt;
  std::string solve_engine = "dense";
  std::string solve_rule = "curvature_checked";
  std::uint64_t solve_noise_seed = 0;
  std::string solve_out;
  bool solve_compare = false;
  solve_inst.add(solve);
  solve->add_flag("--compare-reference", solve_compare,
                  "Also report agreement with the dense first-order product");
  solve_noise.add(solve);
  solve->add_option("--steps", solve_steps, "Adiabatic step count L");
  solve->add_option("--dt", solve_dt, "Time step (T = L * dt)");
  solve->add_option("--engine", solve_engine, "circuit | dense");
  solve->add_option("--sign-rule", solve_rule, "curvature_checked | history_checked | extrapolate");
  solve->add_option("--noise-seed", solve_noise_seed, "Noise stream seed");
  solve->add_option("--out", solve_out, "Write per-step records as CSV");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Run a benchmark sweep from a JSON config");
  std::string sweep_config;
  NoiseArgs sweep_noise;
  std::uint64_t sweep_seed = 0;
  double sweep_dt = 0.0;
  std::string sweep_engine;
  std::string sweep_out;
  std::size_t sweep_threads = 0;
  sweep->add_option("--config", sweep_config, "Sweep config (JSON)");
  sweep_noise.add(sweep);
  auto* sweep_seed_opt = sweep->add_option("--seed", sweep_seed, "Override base_seed");
  auto* sweep_dt_opt = sweep->add_option("--dt", sweep_dt, "Override dt");
  sweep->add_option("--engine", sweep_engine, "Override engine");
  sweep->add_option("--out", sweep_out, "Override output CSV path");
  auto* sweep_threads_opt = sweep->add_option("--threads", sweep_threads, "Worker threads");

  // verify-encoding
  auto* verify = app.add_subcommand("verify-encoding", "Check U_A block extraction");
  std::size_t verify_n = 2;
  std::size_t verify_trials = 20;
  std::uint64_t verify_seed = 1;
  verify->add_option("--n", verify_n, "Index qubits (matrix is 2^n x 2^n)")->check(CLI::Range(1, 5));
  verify->add_option("--trials", verify_trials, "Random matrices");
  verify->add_option("--seed", verify_seed, "RNG seed");

  // gap-scan
  auto* gap = app.add_subcommand("gap-scan", "Spectral gap along the schedule");
  InstanceArgs gap_inst;
  std::size_t gap_points = 101;
  std::string gap_out;
  gap_inst.add(gap);
  gap->add_option("--points", gap_points, "Grid points on [0, 1]");
  gap->add_option("--out", gap_out, "CSV output path (default stdout)");

  // depth-report
  auto* depth = app.add_subcommand("depth-report", "Dynamic vs conventional depth");
  InstanceArgs depth_inst;
  std::size_t depth_steps = 1000;
  double depth_dt = kDefaultDt;
  depth_inst.add(depth);
  depth->add_option("--steps", depth_steps, "Adiabatic step count L");
  depth->add_option("--dt", depth_dt, "Time step");

  // plot
  auto* plot = app.add_subcommand("plot", "Emit plot data and script from a sweep CSV");
  std::string plot_csv;
  std::string plot_out = "plots";
  plot->add_option("csv", plot_csv, "Sweep CSV")->required();
  plot->add_option("--out", plot_out, "Output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) {
      const LinearSystemInstance inst = solve_inst.make();
      const Schedule sched{solve_steps, solve_dt};
      SolveOptions opt;
      opt.engine = parse_engine(solve_engine);
      opt.noise = solve_noise.make();
      opt.sign_rule = parse_sign_rule(solve_rule);
      opt.noise_seed = solve_noise_seed;
      opt.keep_records = !solve_out.empty();
      const EvolutionTrace tr = run_segmented_solve(inst, sched, opt);
      std::printf("dim=%zu\nkappa=%.17g\nsteps=%zu\ndt=%.17g\n", inst.dim, inst.kappa_target,
                  sched.steps, sched.dt);
      std::printf("fidelity=%.17g\nfidelity_untruncated=%.17g\nimag_residual=%.17g\n",
                  tr.fidelity, tr.fidelity_untruncated, tr.imag_residual);
      std::printf("truncation_accepted=%s\n", tr.truncation_accepted ? "true" : "false");
      if (!tr.truncation_accepted) {
        std::printf("modify_signal=true\nsuggested_steps=%zu\n", suggested_retry_steps(sched.steps));
      }
      if (solve_compare) {
        const ReferenceTrace ref = evolve_product(inst, sched, EvolutionMode::first_order);
        const RealCoordinates rc = real_coordinates(ref.final_state());
        RealVector x(2 * rc.u.size());
        x << rc.u, rc.v;
        std::printf("reference_agreement=%.17g\n", std::abs(x.normalized().dot(tr.final_state)));
      }
      std::printf("wall_ms=%.3f\n", tr.wall_ms);
      print_depth(depth_report(inst, sched));
      if (!solve_out.empty()) {
        std::ofstream out(solve_out);
        if (!out) throw InvalidArgument("cannot write " + solve_out);
        out << "step,component_index,probability,sign,value,success_probability\n";
        for (const SegmentRecord& r : tr.records) {
          for (Eigen::Index i = 0; i < r.reconstructed.size(); ++i) {
            out << r.step << ',' << i << ',' << format_double(r.probabilities(i)) << ','
                << r.signs[static_cast<std::size_t>(i)] << ',' << format_double(r.reconstructed(i))
                << ',' << format_double(r.success_probability) << '\n';
          }
        }
      }
      return 0;
    }
    if (*sweep) {
      SweepConfig cfg = sweep_config.empty() ? SweepConfig{} : load_sweep_config(sweep_config);
      if (*sweep_seed_opt) cfg.base_seed = sweep_seed;
      if (*sweep_dt_opt) cfg.dt = sweep_dt;
      if (sweep->count("--noise-model")) cfg.noise.model = parse_noise_model(sweep_noise.model);
      if (sweep->count("--noise-strength")) cfg.noise.strength = sweep_noise.strength;
      if (sweep->count("--shots") && sweep_noise.shots > 0) cfg.noise.shots = sweep_noise.shots;
      if (!sweep_engine.empty()) cfg.engine = parse_engine(sweep_engine);
      if (!sweep_out.empty()) cfg.output = sweep_out;
      if (*sweep_threads_opt) cfg.threads = sweep_threads;
      const std::vector<BenchmarkRecord> recs = run_sweep(cfg);
      write_csv(std::filesystem::path(cfg.output), recs);
      std::size_t failed = 0;
      for (const BenchmarkRecord& r : recs) failed += r.status != "ok";
      std::printf("rows=%zu non_ok=%zu output=%s\n", recs.size(), failed, cfg.output.c_str());
      return 0;
    }
    if (*verify) return run_verify_encoding(verify_n, verify_trials, verify_seed);
    if (*gap) {
      const std::vector<GapPoint> pts = gap_scan(build_pair(gap_inst.make()), gap_points);
      if (gap_out.empty()) {
        write_gap_csv(std::cout, pts);
      } else {
        std::ofstream out(gap_out);
        if (!out) throw InvalidArgument("cannot write " + gap_out);
        write_gap_csv(out, pts);
      }
      return 0;
    }
    if (*depth) {
      print_depth(depth_report(depth_inst.make(), Schedule{depth_steps, depth_dt}));
      return 0;
    }
    if (*plot) {
      for (const auto& p : emit_plots(plot_csv, plot_out)) std::printf("%s\n", p.c_str());
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
