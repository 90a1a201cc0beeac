#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <utility>

#include "dmmsat/analysis.hpp"
#include "dmmsat/dimacs.hpp"
#include "dmmsat/generators.hpp"
#include "dmmsat/rng.hpp"
#include "dmmsat/solver.hpp"
#include "dmmsat/version.hpp"

namespace py = pybind11;
using namespace dmmsat;

namespace {

GeneratorKind kind_from_string(const std::string& kind) {
    if (kind == "xorsat") return GeneratorKind::Xorsat;
    if (kind == "barthel") return GeneratorKind::Barthel;
    throw std::invalid_argument("kind must be 'xorsat' or 'barthel'");
}

TtsSampleSet set_from_pairs(const std::vector<std::pair<double, bool>>& samples) {
    TtsSampleSet set;
    for (const auto& [tts, censored] : samples) set.add(tts, censored);
    return set;
}

FitFamily scaling_family(const std::string& name) {
    if (name == "powerlaw") return FitFamily::PowerLaw;
    if (name == "expscaling") return FitFamily::ExpScaling;
    throw std::invalid_argument("family must be 'powerlaw' or 'expscaling'");
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Memcomputing-style continuous-time 3-SAT solver core";
    m.attr("__version__") = kVersion;

    py::class_<Literal>(m, "Literal")
        .def(py::init<std::uint32_t, bool>(), py::arg("var"), py::arg("negated"))
        .def_readonly("var", &Literal::var)
        .def_readonly("negated", &Literal::negated)
        .def("__repr__", [](const Literal& l) {
            return "Literal(var=" + std::to_string(l.var) +
                   ", negated=" + (l.negated ? std::string("True") : "False") + ")";
        });

    py::class_<Clause>(m, "Clause")
        .def(py::init<Literal, Literal, Literal>())
        .def_property_readonly("literals", [](const Clause& c) {
            return std::vector<Literal>(c.literals().begin(), c.literals().end());
        });

    py::class_<Cnf>(m, "Cnf")
        .def(py::init<std::uint32_t, std::vector<Clause>>(), py::arg("num_vars"),
             py::arg("clauses"))
        .def_property_readonly("num_vars", &Cnf::num_vars)
        .def_property_readonly("num_clauses", &Cnf::num_clauses)
        .def_property_readonly("clauses", &Cnf::clauses)
        .def("digest", &instance_digest_hex);

    m.def("parse_dimacs", [](const std::string& text) {
        DimacsFile f = parse_dimacs(text);
        return std::make_pair(std::move(f.cnf), std::move(f.planted));
    }, py::arg("text"), "Parse DIMACS text; returns (cnf, planted or None).");
    m.def("write_dimacs", &write_dimacs, py::arg("cnf"),
          py::arg("planted") = std::nullopt,
          py::arg("comments") = std::vector<std::string>{});

    m.def("eval_clause", &eval_clause, py::arg("clause"), py::arg("assignment"));
    m.def("eval_cnf", [](const Cnf& cnf, const Assignment& a) {
        const CnfEval ev = eval_cnf(cnf, a);
        return std::make_pair(ev.satisfied, ev.unsat_count);
    }, py::arg("cnf"), py::arg("assignment"),
      "Returns (satisfied, unsat_count).");

    m.def("gen_xorsat", [](std::uint32_t n, std::uint64_t seed) {
        PlantedInstance inst = gen_xorsat(n, seed);
        return std::make_pair(std::move(inst.cnf), std::move(inst.planted));
    }, py::arg("n"), py::arg("seed"));
    m.def("gen_barthel", [](std::uint32_t n, double ratio, double p0,
                            std::uint64_t seed) {
        PlantedInstance inst = gen_barthel(n, ratio, p0, seed);
        return std::make_pair(std::move(inst.cnf), std::move(inst.planted));
    }, py::arg("n"), py::arg("ratio"), py::arg("p0") = 0.08, py::arg("seed") = 0);
    m.def("barthel_type_probs", [](double p0) {
        const BarthelTypeProbs p = barthel_type_probs(p0);
        return py::make_tuple(p.p0, p.p1, p.p2);
    }, py::arg("p0"));

    py::class_<DmmParams>(m, "DmmParams")
        .def(py::init<>())
        .def_readwrite("alpha", &DmmParams::alpha)
        .def_readwrite("beta", &DmmParams::beta)
        .def_readwrite("gamma", &DmmParams::gamma)
        .def_readwrite("delta", &DmmParams::delta)
        .def_readwrite("epsilon", &DmmParams::epsilon)
        .def_readwrite("zeta", &DmmParams::zeta)
        .def_readwrite("dt", &DmmParams::dt)
        .def_readwrite("v_thr", &DmmParams::v_thr)
        .def_readwrite("v_jump", &DmmParams::v_jump)
        .def_readwrite("max_steps", &DmmParams::max_steps);

    py::class_<SolveResult>(m, "SolveResult")
        .def_readonly("solved", &SolveResult::solved)
        .def_readonly("steps", &SolveResult::steps)
        .def_readonly("tts", &SolveResult::tts)
        .def_readonly("jumps", &SolveResult::jumps)
        .def_readonly("assignment", &SolveResult::assignment)
        .def_readonly("seed", &SolveResult::seed)
        .def_readonly("instance_digest", &SolveResult::instance_digest)
        .def("to_json", &solve_result_json)
        .def("__repr__", [](const SolveResult& r) {
            return "SolveResult(solved=" +
                   std::string(r.solved ? "True" : "False") +
                   ", tts=" + std::to_string(r.tts) + ")";
        });

    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("vars", &Trajectory::vars)
        .def_readonly("times", &Trajectory::times)
        .def_readonly("v_samples", &Trajectory::v_samples)
        .def("to_csv", &trajectory_csv);

    m.def("solve",
          [](const Cnf& cnf, const DmmParams& params, std::uint64_t seed,
             const std::string& init, std::uint32_t check_every,
             std::optional<std::uint32_t> trajectory_stride) {
              SolveConfig config;
              config.params = params;
              config.seed = seed;
              config.check_every = check_every;
              if (init == "uniform")
                  config.init = InitMode::UniformRandom;
              else if (init == "all-ones")
                  config.init = InitMode::AllOnes;
              else
                  throw std::invalid_argument("init must be 'uniform' or 'all-ones'");
              if (trajectory_stride)
                  config.trajectory = TrajectorySpec{*trajectory_stride, {}};
              SolveOutput out = solve(cnf, config);
              return std::make_pair(std::move(out.result),
                                    std::move(out.trajectory));
          },
          py::arg("cnf"), py::arg("params") = DmmParams{}, py::arg("seed") = 0,
          py::arg("init") = "uniform", py::arg("check_every") = 1,
          py::arg("trajectory_stride") = std::nullopt,
          "Returns (result, trajectory or None).",
          py::call_guard<py::gil_scoped_release>());

    m.def("run_seed", &run_seed, py::arg("master_seed"), py::arg("instance_idx"),
          py::arg("repeat_idx"));

    py::class_<Histogram>(m, "Histogram")
        .def_readonly("bin_width", &Histogram::bin_width)
        .def_readonly("origin", &Histogram::origin)
        .def_readonly("first_bin", &Histogram::first_bin)
        .def_readonly("counts", &Histogram::counts)
        .def_readonly("n_inst", &Histogram::n_inst)
        .def("bin_center", &Histogram::bin_center)
        .def("total", &Histogram::total);

    py::class_<FitResult>(m, "FitResult")
        .def_property_readonly("family", [](const FitResult& f) {
            return fit_family_name(f.family);
        })
        .def_readonly("params", &FitResult::params)
        .def_readonly("stderrs", &FitResult::stderrs)
        .def_readonly("rss", &FitResult::rss)
        .def_readonly("r2", &FitResult::r2)
        .def_readonly("prefactor", &FitResult::prefactor)
        .def_readonly("in_domain", &FitResult::in_domain)
        .def("to_json", &fit_report_json);

    m.def("median_tts", [](const std::vector<std::pair<double, bool>>& samples) {
        return median_tts(set_from_pairs(samples));
    }, py::arg("samples"), "samples: list of (tts, censored) pairs");
    m.def("nmtts", [](const std::vector<std::pair<double, bool>>& modified,
                      const std::vector<std::pair<double, bool>>& unmodified) {
        return nmtts(set_from_pairs(modified), set_from_pairs(unmodified));
    }, py::arg("modified"), py::arg("unmodified"));
    m.def("jump_acceleration_model", &jump_acceleration_model, py::arg("v_jump"));
    m.def("histogram", [](const std::vector<std::pair<double, bool>>& samples,
                          double w, double origin) {
        return histogram(set_from_pairs(samples), w, origin);
    }, py::arg("samples"), py::arg("w"), py::arg("origin") = 0.0);
    m.def("fit_exponential", &fit_exponential, py::arg("histogram"));
    m.def("fit_inverse_gaussian", &fit_inverse_gaussian, py::arg("histogram"));
    m.def("fit_scaling", [](const std::vector<std::pair<double, double>>& points,
                            const std::string& family) {
        std::vector<ScalingPoint> pts;
        for (const auto& [n, tts] : points) pts.push_back({n, tts});
        return fit_scaling(pts, scaling_family(family));
    }, py::arg("points"), py::arg("family") = "powerlaw");

    py::register_exception<MedianUndefined>(m, "MedianUndefinedError",
                                            PyExc_ValueError);
    py::register_exception<FitError>(m, "FitError", PyExc_RuntimeError);
    py::register_exception<DimacsError>(m, "DimacsError", PyExc_ValueError);
    py::register_exception<GenerationError>(m, "GenerationError",
                                            PyExc_RuntimeError);
}
