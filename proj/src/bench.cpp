#include "adialin/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>
#include <tuple>

#include "adialin/error.hpp"
#include "adialin/seed.hpp"

namespace adialin {

namespace {

const std::vector<std::string> kColumns{
    "dim",     "kappa",    "steps",         "trial",               "seed",
    "noise_model", "noise_strength", "engine", "fidelity", "imag_residual",
    "truncation_accepted", "wall_ms", "status"};

struct Task {
  std::size_t dim;
  double kappa;
  std::size_t steps;
  std::size_t trial;
};

BenchmarkRecord run_task(const SweepConfig& config, const Task& t) {
  BenchmarkRecord rec;
  rec.dim = t.dim;
  rec.kappa = t.kappa;
  rec.steps = t.steps;
  rec.trial = t.trial;
  rec.seed = instance_seed(config.base_seed, t.dim, t.trial);
  rec.noise_model = noise_model_name(config.noise.model);
  rec.noise_strength = config.noise.strength;
  rec.engine = engine_name(config.engine);
  try {
    const LinearSystemInstance inst = generate_instance(t.dim, t.kappa, rec.seed);
    SolveOptions opt;
    opt.engine = config.engine;
    opt.noise = config.noise;
    opt.sign_rule = config.sign_rule;
    opt.noise_seed = trial_noise_seed(config.base_seed, t.dim, t.kappa, t.steps, t.trial);
    opt.keep_records = false;
    opt.record_wall_time = config.record_wall_time;
    const EvolutionTrace tr = run_segmented_solve(inst, Schedule{t.steps, config.dt}, opt);
    rec.fidelity = tr.fidelity;
    rec.imag_residual = tr.imag_residual;
    rec.truncation_accepted = tr.truncation_accepted;
    rec.wall_ms = tr.wall_ms;
    rec.status = tr.truncation_accepted ? "ok" : "modify_signal";
  } catch (const VanishingPostSelectionError&) {
    rec.status = "vanishing_postselection";
  } catch (const ScheduleGuardError&) {
    rec.status = "schedule_guard";
  } catch (const std::exception&) {
    rec.status = "error";
  }
  return rec;
}

template <typename T>
std::vector<T> sorted_unique(std::vector<T> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

std::string trim_cr(std::string s) {
  if (!s.empty() && s.back() == '\r') s.pop_back();
  return s;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void SweepConfig::validate() const {
  if (dims.empty() || kappas.empty() || steps_list.empty()) {
    throw InvalidArgument("sweep lists must be non-empty");
  }
  if (trials < 1) throw InvalidArgument("trials must be >= 1");
  for (std::size_t d : dims)
    if (d < 2 || !is_power_of_two(d)) throw InvalidArgument("dims must be powers of two >= 2");
  for (double k : kappas)
    if (!(k >= 1.0) || !std::isfinite(k)) throw InvalidArgument("kappas must be >= 1");
  for (std::size_t s : steps_list)
    if (s < 1) throw InvalidArgument("steps must be >= 1");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("dt must be > 0");
  noise.validate();
}

nlohmann::json sweep_config_to_json(const SweepConfig& c) {
  nlohmann::json noise{{"model", noise_model_name(c.noise.model)},
                       {"strength", c.noise.strength}};
  noise["shots"] = c.noise.shots ? nlohmann::json(*c.noise.shots) : nlohmann::json(nullptr);
  return {{"dims", c.dims},
          {"kappas", c.kappas},
          {"steps_list", c.steps_list},
          {"trials", c.trials},
          {"dt", c.dt},
          {"noise", noise},
          {"engine", engine_name(c.engine)},
          {"sign_rule", sign_rule_name(c.sign_rule)},
          {"base_seed", c.base_seed},
          {"output", c.output},
          {"threads", c.threads},
          {"record_wall_time", c.record_wall_time}};
}

SweepConfig sweep_config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InvalidArgument("sweep config must be a JSON object");
  static const std::vector<std::string> known{"dims",      "kappas", "steps_list", "trials",
                                              "dt",        "noise",  "engine",     "sign_rule",
                                              "base_seed", "output", "threads",
                                              "record_wall_time"};
  for (const auto& [key, _] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw InvalidArgument("unknown sweep config key \"" + key + "\"");
    }
  }
  SweepConfig c;
  try {
    if (j.contains("dims")) c.dims = j.at("dims").get<std::vector<std::size_t>>();
    if (j.contains("kappas")) c.kappas = j.at("kappas").get<std::vector<double>>();
    if (j.contains("steps_list")) c.steps_list = j.at("steps_list").get<std::vector<std::size_t>>();
    if (j.contains("trials")) c.trials = j.at("trials").get<std::size_t>();
    if (j.contains("dt")) c.dt = j.at("dt").get<double>();
    if (j.contains("noise")) {
      const auto& n = j.at("noise");
      if (n.contains("model")) c.noise.model = parse_noise_model(n.at("model").get<std::string>());
      if (n.contains("strength")) c.noise.strength = n.at("strength").get<double>();
      if (n.contains("shots") && !n.at("shots").is_null())
        c.noise.shots = n.at("shots").get<std::size_t>();
    }
    if (j.contains("engine")) c.engine = parse_engine(j.at("engine").get<std::string>());
    if (j.contains("sign_rule"))
      c.sign_rule = parse_sign_rule(j.at("sign_rule").get<std::string>());
    if (j.contains("base_seed")) c.base_seed = j.at("base_seed").get<std::uint64_t>();
    if (j.contains("output")) c.output = j.at("output").get<std::string>();
    if (j.contains("threads")) c.threads = j.at("threads").get<std::size_t>();
    if (j.contains("record_wall_time")) c.record_wall_time = j.at("record_wall_time").get<bool>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed sweep config: ") + e.what());
  }
  c.validate();
  return c;
}

SweepConfig load_sweep_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open sweep config " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument("invalid JSON in " + path.string() + ": " + e.what());
  }
  return sweep_config_from_json(j);
}

std::uint64_t instance_seed(std::uint64_t base_seed, std::size_t dim, std::size_t trial) {
  return mix_seed({base_seed, dim, trial});
}

std::uint64_t trial_noise_seed(std::uint64_t base_seed, std::size_t dim, double kappa,
                               std::size_t steps, std::size_t trial) {
  return mix_seed({base_seed, dim, seed_word(kappa), steps, trial});
}

std::size_t resolve_thread_count(std::size_t requested) {
  std::size_t n = requested;
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("ADIALIN_THREADS")) {
    char* end = nullptr;
    const unsigned long long cap = std::strtoull(env, &end, 10);
    if (end != env && cap > 0) n = std::min<std::size_t>(n, cap);
  }
  return n;
}

std::vector<BenchmarkRecord> run_sweep(const SweepConfig& config) {
  config.validate();
  std::vector<Task> tasks;
  for (std::size_t d : sorted_unique(config.dims))
    for (double k : sorted_unique(config.kappas))
      for (std::size_t s : sorted_unique(config.steps_list))
        for (std::size_t t = 0; t < config.trials; ++t) tasks.push_back({d, k, s, t});

  std::vector<BenchmarkRecord> out(tasks.size());
  const std::size_t workers = std::min(resolve_thread_count(config.threads), tasks.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) out[i] = run_task(config, tasks[i]);
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  return out;
}

void write_csv(std::ostream& os, const std::vector<BenchmarkRecord>& records) {
  for (std::size_t i = 0; i < kColumns.size(); ++i) os << (i ? "," : "") << kColumns[i];
  os << '\n';
  for (const BenchmarkRecord& r : records) {
    os << r.dim << ',' << format_double(r.kappa) << ',' << r.steps << ',' << r.trial << ','
       << r.seed << ',' << r.noise_model << ',' << format_double(r.noise_strength) << ','
       << r.engine << ',' << format_double(r.fidelity) << ',' << format_double(r.imag_residual)
       << ',' << (r.truncation_accepted ? "true" : "false") << ',' << format_double(r.wall_ms)
       << ',' << r.status << '\n';
  }
}

void write_csv(const std::filesystem::path& path, const std::vector<BenchmarkRecord>& records) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write " + path.string());
  write_csv(out, records);
}

std::vector<BenchmarkRecord> read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw InvalidArgument("empty CSV " + path.string());
  const std::vector<std::string> header = split(trim_cr(line), ',');
  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < header.size(); ++i) col[header[i]] = i;
  for (const std::string& name : kColumns) {
    if (name == "status") continue;  // optional
    if (!col.count(name)) throw InvalidArgument("CSV is missing column \"" + name + "\"");
  }

  std::vector<BenchmarkRecord> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim_cr(line);
    if (line.empty()) continue;
    const std::vector<std::string> f = split(line, ',');
    if (f.size() < header.size()) {
      throw InvalidArgument("CSV line " + std::to_string(line_no) + " has too few fields");
    }
    auto at = [&](const char* name) -> const std::string& { return f[col.at(name)]; };
    BenchmarkRecord r;
    try {
      r.dim = std::stoull(at("dim"));
      r.kappa = std::stod(at("kappa"));
      r.steps = std::stoull(at("steps"));
      r.trial = std::stoull(at("trial"));
      r.seed = std::stoull(at("seed"));
      r.noise_model = at("noise_model");
      r.noise_strength = std::stod(at("noise_strength"));
      r.engine = at("engine");
      r.fidelity = std::stod(at("fidelity"));
      r.imag_residual = std::stod(at("imag_residual"));
      r.truncation_accepted = at("truncation_accepted") == "true" || at("truncation_accepted") == "1";
      r.wall_ms = std::stod(at("wall_ms"));
      if (col.count("status")) r.status = at("status");
    } catch (const std::logic_error&) {
      throw InvalidArgument("CSV line " + std::to_string(line_no) + " is malformed");
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<SeriesPoint> aggregate(const std::vector<BenchmarkRecord>& records) {
  std::map<std::tuple<std::size_t, double, std::size_t>, SeriesPoint> cells;
  for (const BenchmarkRecord& r : records) {
    if (r.status != "ok" && r.status != "modify_signal") continue;
    auto [it, fresh] = cells.try_emplace({r.dim, r.kappa, r.steps});
    SeriesPoint& p = it->second;
    if (fresh) {
      p = {r.dim, r.kappa, r.steps, 0.0, r.fidelity, r.fidelity, 0};
    }
    p.mean += r.fidelity;
    p.min = std::min(p.min, r.fidelity);
    p.max = std::max(p.max, r.fidelity);
    ++p.count;
  }
  std::vector<SeriesPoint> out;
  for (auto& [_, p] : cells) {
    p.mean /= static_cast<double>(p.count);
    out.push_back(p);
  }
  return out;
}

std::vector<std::filesystem::path> emit_plots(const std::filesystem::path& csv_path,
                                              const std::filesystem::path& out_dir) {
  const std::vector<SeriesPoint> points = aggregate(read_csv(csv_path));
  std::filesystem::create_directories(out_dir);
  std::map<std::size_t, std::vector<SeriesPoint>> by_dim;
  for (const SeriesPoint& p : points) by_dim[p.dim].push_back(p);

  std::vector<std::filesystem::path> written;
  for (const auto& [dim, series] : by_dim) {
    const auto path = out_dir / ("fidelity_dim" + std::to_string(dim) + ".dat");
    std::ofstream out(path);
    if (!out) throw InvalidArgument("cannot write " + path.string());
    out << "# kappa steps mean min max count\n";
    for (const SeriesPoint& p : series) {
      out << format_double(p.kappa) << ' ' << p.steps << ' ' << format_double(p.mean) << ' '
          << format_double(p.min) << ' ' << format_double(p.max) << ' ' << p.count << '\n';
    }
    written.push_back(path);
  }

  const auto script = out_dir / "plot_fidelity.py";
  std::ofstream py(script);
  if (!py) throw InvalidArgument("cannot write " + script.string());
  py << R"(import glob
import os
import sys

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

here = os.path.dirname(os.path.abspath(__file__))
files = sorted(glob.glob(os.path.join(here, "fidelity_dim*.dat")),
               key=lambda p: int(p.split("fidelity_dim")[1].split(".")[0]))
if not files:
    sys.exit("no fidelity_dim*.dat files next to this script")
fig, axes = plt.subplots(1, len(files), figsize=(4.5 * len(files), 4), squeeze=False)
for ax, path in zip(axes[0], files):
    dim = int(path.split("fidelity_dim")[1].split(".")[0])
    data = np.atleast_2d(np.loadtxt(path))
    for kappa in np.unique(data[:, 0]):
        rows = data[data[:, 0] == kappa]
        rows = rows[np.argsort(rows[:, 1])]
        ax.plot(rows[:, 1], rows[:, 2], marker="o", label=f"kappa={kappa:g}")
        ax.fill_between(rows[:, 1], rows[:, 3], rows[:, 4], alpha=0.2)
    ax.set_title(f"{dim}x{dim}")
    ax.set_xlabel("steps")
    ax.set_ylabel("fidelity")
    ax.legend(fontsize="small")
fig.tight_layout()
fig.savefig(os.path.join(here, "fidelity.png"), dpi=150)
)";
  written.push_back(script);
  return written;
}

}  // namespace adialin
