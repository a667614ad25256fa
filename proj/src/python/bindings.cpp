// Python bindings: thin wrappers over the pipeline runners.  Every call
// returns plain dicts built from the same JSON documents the CLI writes.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "chromatic/errors.hpp"
#include "chromatic/pipeline.hpp"

namespace py = pybind11;
using namespace chromatic;

namespace {

py::object to_python(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

Json from_python(const py::object& o) {
  return Json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

RunConfig make_config(std::uint32_t p, int i, int n, int m, const std::string& emit) {
  RunConfig cfg;
  cfg.p = p;
  cfg.i = i;
  cfg.n = n;
  cfg.m = m;
  cfg.emit = parse_emit(emit);
  return cfg;
}

/// {"command", "config", "ok", "verdicts", "artifacts": {name: text or parsed JSON}}
py::dict result_dict(const RunResult& r) {
  py::dict out;
  out["command"] = r.command;
  out["config"] = to_python(r.config);
  out["ok"] = r.ok;
  out["verdicts"] = to_python(r.verdicts);
  py::dict arts;
  for (const auto& a : r.artifacts) {
    const bool json = a.name.size() > 5 && a.name.substr(a.name.size() - 5) == ".json";
    arts[py::str(a.name)] = json ? to_python(Json::parse(a.content)) : py::str(a.content);
  }
  out["artifacts"] = arts;
  out["manifest"] = to_python(make_manifest(r));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact K(i)-homology and Hochschild computations";
  m.attr("__version__") = kToolVersion;

  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);
  py::register_exception<MathError>(m, "MathError", PyExc_ArithmeticError);

  m.def(
      "derive",
      [](std::uint32_t p, int i, int n, int m_, int trunc, const std::string& scheme, const std::string& emit,
         const std::string& cache_dir) {
        auto cfg = make_config(p, i, n, m_, emit);
        cfg.trunc = trunc;
        cfg.scheme = parse_scheme(scheme);
        cfg.cache_dir = cache_dir;
        return result_dict(run_derive(cfg));
      },
      py::arg("p") = 3, py::arg("i") = 1, py::arg("n") = 2, py::arg("m") = 1, py::arg("trunc") = 0,
      py::arg("scheme") = "hazewinkel", py::arg("emit") = "json", py::arg("cache_dir") = "");

  m.def(
      "hh",
      [](const py::object& algebra, const std::string& method, int s_max, std::optional<std::pair<int, int>> window,
         std::optional<std::vector<std::string>> smooth, std::map<std::string, long long> specialize,
         std::size_t max_columns, const std::string& emit) {
        RunConfig cfg;
        cfg.s_max = s_max;
        cfg.window = window;
        cfg.max_columns = max_columns;
        cfg.emit = parse_emit(emit);
        HHRequest req;
        req.algebra = from_python(algebra);
        req.method = method;
        if (smooth) {
          req.smooth = *smooth;
          req.smooth_given = true;
        }
        req.specialize = std::move(specialize);
        return result_dict(run_hh(cfg, req));
      },
      py::arg("algebra"), py::arg("method") = "hkr", py::arg("s_max") = 4, py::arg("window") = py::none(),
      py::arg("smooth") = py::none(), py::arg("specialize") = std::map<std::string, long long>{},
      py::arg("max_columns") = 10'000, py::arg("emit") = "json");

  m.def(
      "check_conjecture",
      [](std::uint32_t p, int n, int i) { return result_dict(run_check_conjecture(make_config(p, 1, n, 1, "json"), i)); },
      py::arg("p") = 3, py::arg("n") = 2, py::arg("i") = -1);
  m.def(
      "check_splitting", [](std::uint32_t p) { return result_dict(run_check_splitting(make_config(p, 1, 2, 1, "json"))); },
      py::arg("p") = 3);
  m.def(
      "check_collapse",
      [](std::uint32_t p, int n, int i, const py::object& page) {
        auto cfg = make_config(p, i, n, 1, "json");
        return result_dict(run_check_collapse(cfg, page.is_none() ? Json(nullptr) : from_python(page)));
      },
      py::arg("p") = 3, py::arg("n") = 2, py::arg("i") = 1, py::arg("page") = py::none());

  m.def("fixture_names", &fixture_names);
  m.def(
      "reproduce",
      [](std::uint32_t p, std::optional<std::vector<std::string>> only, const std::string& out_dir) {
        std::optional<std::set<std::string>> filter;
        if (only) filter = std::set<std::string>(only->begin(), only->end());
        const auto r = run_reproduce(make_config(p, 1, 2, 1, "json"), filter);
        if (!out_dir.empty()) write_run(out_dir, r);
        return result_dict(r);
      },
      py::arg("p") = 3, py::arg("only") = py::none(), py::arg("out_dir") = "");
}
