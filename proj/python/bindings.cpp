#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "esc/io.hpp"

namespace py = pybind11;
using namespace esc;

namespace {

// keyword arguments mirror the CLI options
RunConfig config(const py::kwargs& kw) {
  RunConfig c;
  for (auto& [k, v] : kw) {
    std::string key = py::str(k);
    if (key == "type") c.type = v.cast<std::string>();
    else if (key == "rank" || key == "n") c.rank = v.cast<int>();
    else if (key == "w") c.w = py::str(v);
    else if (key == "word") {
      if (py::isinstance<py::str>(v)) {
        c.word = v.cast<std::string>();
      } else {
        std::string s;
        for (int i : v.cast<std::vector<int>>()) s += (s.empty() ? "" : ",") + std::to_string(i);
        c.word = s;
      }
    } else if (key == "parabolic") c.parabolic = v.cast<std::vector<int>>();
    else if (key == "trunc") c.trunc = v.cast<int>();
    else if (key == "mode") c.mode = v.cast<std::string>();
    else if (key == "points") c.points = v.cast<int>();
    else if (key == "seed") c.seed = v.cast<unsigned long>();
    else if (key == "suite") c.suite = v.cast<std::string>();
    else if (key == "slope") c.slope = parse_rational(py::str(v));
    else if (key == "timing") c.timing = v.cast<bool>();
    else throw Error(ErrorCode::InvalidArgument, "unknown option '" + key + "'");
  }
  c.validate();
  return c;
}

py::object to_py(const json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

}  // namespace

PYBIND11_MODULE(_esc, m) {
  py::register_exception<Error>(m, "EscError", PyExc_ValueError);

  m.def("localize", [](py::kwargs kw) { return to_py(cmd_localize(config(kw))); });
  m.def("billey", [](py::kwargs kw) { return to_py(cmd_billey(config(kw))); });
  m.def("gpd", [](py::kwargs kw) { return to_py(cmd_gpd(config(kw))); });
  m.def("poly", [](py::kwargs kw) { return to_py(cmd_poly(config(kw))); });
  m.def("verify", [](py::kwargs kw) {
    RunConfig c = config(kw);
    return to_py(run_suite(c).to_json(c.timing));
  });
  m.def("suites", [] { return suite_names(); });
  m.def("render", [](py::object doc, const std::string& format) {
    std::string s = py::str(py::module_::import("json").attr("dumps")(doc));
    return render(json::parse(s), format);
  });
}
