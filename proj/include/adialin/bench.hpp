#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "adialin/dynamic_engine.hpp"

namespace adialin {

/// measurement_gaussian strength that keeps every (dim, kappa) cell of the
/// L = 2000 grid above 0.8 mean fidelity. At 1e-3 the grid mean is about 0.65.
inline constexpr double kCalibratedMeasurementSigma = 2e-4;

struct SweepConfig {
  std::vector<std::size_t> dims{2, 4, 8, 16};
  std::vector<double> kappas{10, 20, 30, 40, 50};
  std::vector<std::size_t> steps_list{200, 400, 600, 800, 1000, 1200, 1400, 1600, 1800, 2000};
  std::size_t trials = 10;
  double dt = kDefaultDt;
  NoiseConfig noise;
  Engine engine = Engine::dense;
  SignRule sign_rule = SignRule::curvature_checked;
  std::uint64_t base_seed = 0;
  std::string output = "sweep.csv";
  std::size_t threads = 0;         // 0 = auto; ADIALIN_THREADS caps it
  bool record_wall_time = false;   // timings make the CSV non-reproducible

  void validate() const;
};

nlohmann::json sweep_config_to_json(const SweepConfig& config);
SweepConfig sweep_config_from_json(const nlohmann::json& j);
SweepConfig load_sweep_config(const std::filesystem::path& path);

struct BenchmarkRecord {
  std::size_t dim = 0;
  double kappa = 0.0;
  std::size_t steps = 0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;  // instance seed
  std::string noise_model = "none";
  double noise_strength = 0.0;
  std::string engine = "dense";
  double fidelity = 0.0;
  double imag_residual = 0.0;
  bool truncation_accepted = false;
  double wall_ms = 0.0;
  std::string status = "ok";  // ok | modify_signal | vanishing_postselection | error
};

/// Shared by every kappa and step count of one trial: the basis and b stay
/// fixed and only the spectrum changes with kappa.
std::uint64_t instance_seed(std::uint64_t base_seed, std::size_t dim, std::size_t trial);
std::uint64_t trial_noise_seed(std::uint64_t base_seed, std::size_t dim, double kappa,
                               std::size_t steps, std::size_t trial);

/// Worker count for `requested` (0 = hardware concurrency), capped by ADIALIN_THREADS.
std::size_t resolve_thread_count(std::size_t requested);

/// One record per (dim, kappa, steps, trial), sorted by that key. Failing
/// trials become rows with a non-ok status.
std::vector<BenchmarkRecord> run_sweep(const SweepConfig& config);

void write_csv(std::ostream& os, const std::vector<BenchmarkRecord>& records);
void write_csv(const std::filesystem::path& path, const std::vector<BenchmarkRecord>& records);
/// Throws InvalidArgument naming the first missing column.
std::vector<BenchmarkRecord> read_csv(const std::filesystem::path& path);

/// Mean and min/max band over trials for one (dim, kappa, steps) cell.
struct SeriesPoint {
  std::size_t dim = 0;
  double kappa = 0.0;
  std::size_t steps = 0;
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  std::size_t count = 0;
};

/// Cells over rows whose fidelity is valid (status ok or modify_signal).
std::vector<SeriesPoint> aggregate(const std::vector<BenchmarkRecord>& records);

/// Writes fidelity_dim<D>.dat per dimension and plot_fidelity.py into
/// `out_dir`; returns the written paths.
std::vector<std::filesystem::path> emit_plots(const std::filesystem::path& csv_path,
                                              const std::filesystem::path& out_dir);

std::string format_double(double v);

}  // namespace adialin
