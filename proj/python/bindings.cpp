#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "adialin/bench.hpp"
#include "adialin/block_encoding.hpp"
#include "adialin/dynamic_engine.hpp"
#include "adialin/error.hpp"
#include "adialin/postprocess.hpp"
#include "adialin/reference_evolution.hpp"

namespace py = pybind11;
using namespace adialin;

namespace {

NoiseConfig make_noise(const std::string& model, double strength, std::optional<std::size_t> shots) {
  NoiseConfig n{parse_noise_model(model), strength, shots};
  n.validate();
  return n;
}

py::dict record_dict(const BenchmarkRecord& r) {
  py::dict d;
  d["dim"] = r.dim;
  d["kappa"] = r.kappa;
  d["steps"] = r.steps;
  d["trial"] = r.trial;
  d["seed"] = r.seed;
  d["noise_model"] = r.noise_model;
  d["noise_strength"] = r.noise_strength;
  d["engine"] = r.engine;
  d["fidelity"] = r.fidelity;
  d["imag_residual"] = r.imag_residual;
  d["truncation_accepted"] = r.truncation_accepted;
  d["wall_ms"] = r.wall_ms;
  d["status"] = r.status;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Segmented adiabatic linear-system solver with a dense statevector backend.";

  auto base = py::register_exception<Error>(m, "AdialinError", PyExc_RuntimeError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<SingularMatrixError>(m, "SingularMatrixError", base.ptr());
  py::register_exception<FormViolationError>(m, "FormViolationError", base.ptr());
  py::register_exception<VanishingPostSelectionError>(m, "VanishingPostSelectionError", base.ptr());
  py::register_exception<ScheduleGuardError>(m, "ScheduleGuardError", base.ptr());
  py::register_exception<NotHermitianError>(m, "NotHermitianError", base.ptr());

  m.attr("DEFAULT_DT") = kDefaultDt;
  m.attr("CALIBRATED_MEASUREMENT_SIGMA") = kCalibratedMeasurementSigma;

  py::class_<LinearSystemInstance>(m, "Instance")
      .def_readonly("dim", &LinearSystemInstance::dim)
      .def_readonly("kappa_target", &LinearSystemInstance::kappa_target)
      .def_readonly("seed", &LinearSystemInstance::seed)
      .def_readonly("a", &LinearSystemInstance::a)
      .def_readonly("b", &LinearSystemInstance::b)
      .def("to_json", [](const LinearSystemInstance& i) { return instance_to_json(i).dump(); })
      .def_static("from_json",
                  [](const std::string& s) { return instance_from_json(nlohmann::json::parse(s)); })
      .def("__repr__", [](const LinearSystemInstance& i) {
        std::ostringstream os;
        os << "Instance(dim=" << i.dim << ", kappa=" << i.kappa_target << ", seed=" << i.seed << ")";
        return os.str();
      });

  m.def("generate_instance", &generate_instance, py::arg("dim"), py::arg("kappa"), py::arg("seed"));
  m.def("normalize_system", &normalize_system, py::arg("a"), py::arg("b"), py::arg("seed") = 0);
  m.def("reference_solution", &reference_solution, py::arg("instance"));
  m.def("fidelity", &fidelity, py::arg("a"), py::arg("b"));

  py::class_<SegmentRecord>(m, "SegmentRecord")
      .def_readonly("step", &SegmentRecord::step)
      .def_readonly("probabilities", &SegmentRecord::probabilities)
      .def_readonly("signs", &SegmentRecord::signs)
      .def_readonly("reconstructed", &SegmentRecord::reconstructed)
      .def_readonly("success_probability", &SegmentRecord::success_probability)
      .def_readonly("segment_depth", &SegmentRecord::segment_depth);

  py::class_<EvolutionTrace>(m, "EvolutionTrace")
      .def_readonly("records", &EvolutionTrace::records)
      .def_readonly("final_state", &EvolutionTrace::final_state)
      .def_readonly("solution", &EvolutionTrace::solution)
      .def_readonly("fidelity", &EvolutionTrace::fidelity)
      .def_readonly("fidelity_untruncated", &EvolutionTrace::fidelity_untruncated)
      .def_readonly("imag_residual", &EvolutionTrace::imag_residual)
      .def_readonly("truncation_accepted", &EvolutionTrace::truncation_accepted)
      .def_readonly("wall_ms", &EvolutionTrace::wall_ms);

  m.def(
      "solve",
      [](const LinearSystemInstance& inst, std::size_t steps, double dt, const std::string& engine,
         const std::string& noise_model, double noise_strength, std::optional<std::size_t> shots,
         const std::string& sign_rule, std::uint64_t noise_seed, bool keep_records) {
        SolveOptions opt;
        opt.engine = parse_engine(engine);
        opt.noise = make_noise(noise_model, noise_strength, shots);
        opt.sign_rule = parse_sign_rule(sign_rule);
        opt.noise_seed = noise_seed;
        opt.keep_records = keep_records;
        py::gil_scoped_release release;
        return run_segmented_solve(inst, Schedule{steps, dt}, opt);
      },
      py::arg("instance"), py::arg("steps"), py::arg("dt") = kDefaultDt, py::arg("engine") = "dense",
      py::arg("noise_model") = "none", py::arg("noise_strength") = 0.0, py::arg("shots") = py::none(),
      py::arg("sign_rule") = "curvature_checked", py::arg("noise_seed") = 0,
      py::arg("keep_records") = false);

  m.def(
      "evolve_product",
      [](const LinearSystemInstance& inst, std::size_t steps, double dt, const std::string& mode) {
        EvolutionMode em;
        if (mode == "first_order") em = EvolutionMode::first_order;
        else if (mode == "exact") em = EvolutionMode::exact;
        else throw InvalidArgument("mode must be first_order or exact");
        const ReferenceTrace tr = evolve_product(inst, Schedule{steps, dt}, em);
        ComplexMatrix out(tr.states.front().amplitudes.size(), static_cast<Eigen::Index>(tr.states.size()));
        for (std::size_t k = 0; k < tr.states.size(); ++k)
          out.col(static_cast<Eigen::Index>(k)) = tr.states[k].amplitudes;
        return out;
      },
      py::arg("instance"), py::arg("steps"), py::arg("dt") = kDefaultDt,
      py::arg("mode") = "first_order", "States after 0..steps steps, one per column.");

  m.def(
      "predict_signs",
      [](const RealVector& x_prev, const RealVector& x_prev2, const RealVector& magnitudes,
         double delta, const std::string& rule, std::optional<RealVector> x_prev3) {
        return predict_signs(x_prev, x_prev2, magnitudes, delta, parse_sign_rule(rule),
                             x_prev3 ? &*x_prev3 : nullptr);
      },
      py::arg("x_prev"), py::arg("x_prev2"), py::arg("magnitudes"), py::arg("delta"),
      py::arg("rule") = "extrapolate", py::arg("x_prev3") = py::none());

  m.def(
      "block_encode",
      [](const RealMatrix& mat) {
        const BlockEncodedOperator op = assemble_ua(mat);
        return py::make_tuple(op.unitary(), op.alpha, op.gates.size());
      },
      py::arg("m"), "Dense U_A, its scale alpha and gate count.");
  m.def(
      "encoded_block", [](const RealMatrix& mat) { return extract_encoded_block(assemble_ua(mat)); },
      py::arg("m"));

  m.def(
      "truncate_imaginary",
      [](const RealVector& u, const RealVector& v, double epsilon) {
        const SolveResult r = truncate_imaginary(RealCoordinates{u, v}, epsilon);
        py::dict d;
        d["solution"] = r.solution;
        d["imag_residual"] = r.imag_residual;
        d["epsilon"] = r.epsilon;
        d["truncation_accepted"] = r.truncation_accepted;
        return d;
      },
      py::arg("u"), py::arg("v"), py::arg("epsilon") = -1.0);

  m.def(
      "depth_report",
      [](const LinearSystemInstance& inst, std::size_t steps, double dt) {
        const DepthReport r = depth_report(inst, Schedule{steps, dt});
        py::dict d;
        d["segment_depth"] = r.segment_depth;
        d["dynamic_total"] = r.dynamic_total;
        d["conventional_total"] = r.conventional_total;
        d["qubit_count"] = r.qubit_count;
        d["gate_count"] = r.gate_count;
        return d;
      },
      py::arg("instance"), py::arg("steps"), py::arg("dt") = kDefaultDt);

  m.def(
      "gap_scan",
      [](const LinearSystemInstance& inst, std::size_t points) {
        py::list out;
        for (const GapPoint& p : gap_scan(build_pair(inst), points)) {
          out.append(py::make_tuple(p.s, p.gap, p.criterion, p.flagged));
        }
        return out;
      },
      py::arg("instance"), py::arg("points") = 101, "List of (s, gap, criterion, flagged).");

  m.def(
      "run_sweep",
      [](const std::string& config_json) {
        const SweepConfig cfg = sweep_config_from_json(nlohmann::json::parse(config_json));
        std::vector<BenchmarkRecord> rows;
        {
          py::gil_scoped_release release;
          rows = run_sweep(cfg);
        }
        py::list out;
        for (const BenchmarkRecord& r : rows) out.append(record_dict(r));
        return out;
      },
      py::arg("config_json"), "Run a sweep from a JSON config; returns one dict per trial.");
  m.def(
      "sweep_csv",
      [](const std::string& config_json) {
        const SweepConfig cfg = sweep_config_from_json(nlohmann::json::parse(config_json));
        py::gil_scoped_release release;
        std::ostringstream os;
        write_csv(os, run_sweep(cfg));
        return os.str();
      },
      py::arg("config_json"));
}
