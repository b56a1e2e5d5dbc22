#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qbloch/acceptance.hpp"
#include "qbloch/bloch.hpp"
#include "qbloch/dilog.hpp"
#include "qbloch/errors.hpp"
#include "qbloch/io.hpp"
#include "qbloch/series.hpp"

namespace py = pybind11;
using namespace qbloch;

namespace {

// Terms and results cross the boundary as JSON text; the Python side wraps
// them in json.loads / json.dumps.
AnyTerm term_of(const std::string& text) { return term_from_json(json::parse(text)); }

SolverConfig solver(int starts, std::uint64_t seed, double tol) {
  SolverConfig s;
  s.starts = starts;
  s.seed = seed;
  s.newton_tol = tol;
  return s;
}

const SpecialQTerm& special(const AnyTerm& t) {
  if (const auto* s = std::get_if<SpecialQTerm>(&t)) return *s;
  throw ConfigError("a special q-term (with \"quads\") is required");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  static py::exception<Error> base(m, "QblochError");
  static py::exception<SchemaError> schema(m, "SchemaError", base.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const SchemaError& e) {
      json is = json::array();
      for (const auto& i : e.issues()) is.push_back({{"pointer", i.pointer}, {"message", i.message}});
      py::object err = py::handle(schema.ptr())(e.what());
      err.attr("issues") = py::module_::import("json").attr("loads")(is.dump());
      PyErr_SetObject(schema.ptr(), err.ptr());
    } catch (const Error& e) {
      py::object err = py::handle(base.ptr())(e.what());
      err.attr("kind") = e.kind();
      PyErr_SetObject(base.ptr(), err.ptr());
    } catch (const json::exception& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  m.def("li2", &li2, py::arg("z"));
  m.def("bloch_wigner", &bloch_wigner, py::arg("z"));
  m.def("rogers_hat", [](cplx z, std::int64_t p, std::int64_t q) { return rogers_hat(CHatPoint::make(z, p, q)).representative; },
        py::arg("z"), py::arg("p") = 0, py::arg("q") = 0);

  m.def("normalize", [](const std::string& text) { return to_json(term_of(text)).dump(); }, py::arg("term"));

  m.def(
      "solve",
      [](const std::string& text, int starts, std::uint64_t seed, double tol) {
        const auto cfg = solver(starts, seed, tol);
        cfg.validate();
        json a = json::array();
        for (const auto& p : solve_variational(as_plain(term_of(text)), cfg)) a.push_back(to_json(p));
        return a.dump();
      },
      py::arg("term"), py::arg("starts") = 200, py::arg("seed") = 7, py::arg("tol") = 1e-10);

  m.def(
      "cv",
      [](const std::string& text, int starts, std::uint64_t seed) {
        const auto cfg = solver(starts, seed, 1e-10);
        cfg.validate();
        return to_json(cv_set(as_plain(term_of(text)), cfg)).dump();
      },
      py::arg("term"), py::arg("starts") = 200, py::arg("seed") = 7);

  m.def(
      "sequence",
      [](const std::string& text, std::int64_t n_max, const std::string& mode) {
        if (mode != "exact" && mode != "numeric") throw ConfigError("mode must be exact or numeric");
        const auto t = term_of(text);
        py::gil_scoped_release nogil;
        return sequence(special(t), n_max, mode == "exact" ? SeriesMode::exact : SeriesMode::numeric).coeffs;
      },
      py::arg("term"), py::arg("n_max"), py::arg("mode") = "numeric");

  m.def(
      "growth_rate",
      [](const std::vector<cplx>& coeffs) {
        SeriesData s;
        s.coeffs = coeffs;
        s.n_max = static_cast<std::int64_t>(coeffs.size()) - 1;
        return to_json(growth_rate(s)).dump();
      },
      py::arg("coeffs"));

  m.def(
      "selftest",
      [](const std::string& data_dir) {
        AcceptanceOptions o;
        o.data_dir = data_dir;
        std::vector<std::tuple<int, std::string, bool, std::string>> out;
        py::gil_scoped_release nogil;
        for (const auto& r : run_acceptance(o)) out.emplace_back(r.id, r.name, r.pass, r.detail);
        return out;
      },
      py::arg("data_dir"));
}
