#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rsp/core.hpp"
#include "rsp/decision.hpp"
#include "rsp/errors.hpp"
#include "rsp/io.hpp"
#include "rsp/pipelines.hpp"
#include "rsp/selection.hpp"

namespace py = pybind11;

namespace {

rsp::Instance make_instance(const std::vector<std::pair<double, double>>& points, rsp::PointIndex s,
                            rsp::PointIndex t, std::uint32_t lambda) {
  rsp::Instance inst;
  for (const auto& [x, y] : points) inst.points.push_back({x, y});
  inst.s = s;
  inst.t = t;
  inst.lambda = lambda;
  rsp::validate(inst);
  return inst;
}

py::dict report_dict(const rsp::SolveReport& r) {
  py::dict counters;
  counters["decide_calls"] = r.counters.decide_calls;
  counters["strict_calls"] = r.counters.strict_calls;
  counters["selection_probes"] = r.counters.selection_probes;
  counters["forks"] = r.counters.forks;
  counters["resolutions"] = r.counters.resolutions;
  counters["comparisons"] = r.counters.comparisons;
  counters["dp_entries"] = r.counters.dp_entries;
  counters["wall_ms"] = r.counters.wall_ms;
  py::dict params;
  params["L"] = r.params.L;
  params["delta"] = r.params.delta;
  params["batch"] = r.params.batch;
  params["seed"] = r.params.seed;
  params["heavy_cells"] = r.params.heavy_cells;
  params["slack"] = r.params.slack;
  py::dict d;
  d["algorithm"] = r.algorithm;
  d["r_star_sq"] = r.r_star.sq;
  d["witness"] = py::make_tuple(r.r_star.first, r.r_star.second);
  d["counters"] = counters;
  d["params"] = params;
  d["fallback"] = r.fallback;
  d["certified"] = r.certified_at_most && r.certified_not_below;
  return d;
}

}  // namespace

PYBIND11_MODULE(_rsp, m) {
  m.doc() = "Reverse shortest path solver for unit-disk graphs";

  py::register_exception<rsp::Error>(m, "RspError");

  py::class_<rsp::Instance>(m, "Instance")
      .def(py::init(&make_instance), py::arg("points"), py::arg("s"), py::arg("t"), py::arg("lambda_"))
      .def_property_readonly("points",
                             [](const rsp::Instance& inst) {
                               std::vector<std::pair<double, double>> pts;
                               for (const auto& p : inst.points) pts.emplace_back(p.x, p.y);
                               return pts;
                             })
      .def_readwrite("s", &rsp::Instance::s)
      .def_readwrite("t", &rsp::Instance::t)
      .def_readwrite("lambda_", &rsp::Instance::lambda)
      .def("__len__", &rsp::Instance::size)
      .def("to_json", &rsp::instance_to_json)
      .def_static("from_json", &rsp::instance_from_json)
      .def("__eq__", [](const rsp::Instance& a, const rsp::Instance& b) { return a == b; });

  m.def(
      "generate",
      [](const std::string& kind, std::size_t n, std::uint64_t seed) {
        auto k = rsp::parse_generator_kind(kind);
        if (!k) throw py::value_error("unknown generator kind: " + kind);
        return rsp::generate(*k, n, seed);
      },
      py::arg("kind"), py::arg("n"), py::arg("seed"));

  m.def(
      "rstar_exact",
      [](const rsp::Instance& inst) {
        const auto c = rsp::rstar_exact(inst);
        return py::make_tuple(c.sq, c.first, c.second);
      },
      py::arg("inst"));

  m.def(
      "decide",
      [](const rsp::Instance& inst, double sq_r, bool strict) {
        return rsp::decide_bfs(inst, sq_r, strict ? rsp::EdgeRule::strict : rsp::EdgeRule::inclusive).reached;
      },
      py::arg("inst"), py::arg("sq_r"), py::arg("strict") = false);

  m.def(
      "solve",
      [](const std::string& algo, const rsp::Instance& inst, std::optional<std::uint64_t> L,
         std::optional<std::uint64_t> delta, std::optional<std::uint64_t> batch, std::uint64_t seed) {
        auto a = rsp::parse_algorithm(algo);
        if (!a) throw py::value_error("unknown algorithm: " + algo);
        rsp::SolveOptions opt;
        opt.L = L;
        opt.delta = delta;
        opt.batch = batch;
        opt.seed = seed;
        rsp::SolveReport rep;
        {
          py::gil_scoped_release release;
          rep = rsp::solve(*a, inst, opt);
        }
        return report_dict(rep);
      },
      py::arg("algo"), py::arg("inst"), py::arg("L") = py::none(), py::arg("delta") = py::none(),
      py::arg("batch") = py::none(), py::arg("seed") = 1);

  m.def(
      "select_bruteforce",
      [](const std::vector<std::pair<double, double>>& a, const std::vector<std::pair<double, double>>& b,
         std::uint64_t k) {
        std::vector<rsp::Point> pa, pb;
        for (const auto& [x, y] : a) pa.push_back({x, y});
        for (const auto& [x, y] : b) pb.push_back({x, y});
        return rsp::select_bruteforce(pa, pb, k);
      },
      py::arg("a"), py::arg("b"), py::arg("k"));
}
