#include "cayley/report.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace cayley;

namespace {

using Params = std::map<std::string, double>;

// A builtin name, a path, or inline JSON text.
Scenario resolve(const std::string& source, const Params& params) {
  Scenario s;
  auto first = source.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && source[first] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(source);
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError(std::string("scenario: malformed JSON (") + e.what() + ")");
    }
    s = scenario_from_json(j);
    for (const auto& [k, v] : params) s.params[k] = v;
  } else {
    s = load_scenario(source, params);
  }
  validate_scenario(s, verification_tolerance());
  return s;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Spin(7)-structure flows on homogeneous 8-manifolds";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<NumericalAbort>(m, "NumericalAbort", PyExc_ArithmeticError);

  m.def("builtin_names", &builtin_names);
  m.def(
      "scenario_json", [](const std::string& src, const Params& p) { return scenario_to_json(resolve(src, p)).dump(); },
      py::arg("scenario"), py::arg("params") = Params{});
  m.def(
      "verify",
      [](const std::string& src, const Params& p, std::optional<double> tol) {
        return report_verify(resolve(src, p), tol.value_or(verification_tolerance())).dump();
      },
      py::arg("scenario"), py::arg("params") = Params{}, py::arg("tol") = py::none());
  m.def(
      "torsion", [](const std::string& src, const Params& p) { return report_torsion(resolve(src, p)).dump(); },
      py::arg("scenario"), py::arg("params") = Params{});
  m.def(
      "rhs",
      [](const std::string& src, const std::string& kind, const Params& p) {
        return report_rhs(resolve(src, p), parse_rhs_kind(kind)).dump();
      },
      py::arg("scenario"), py::arg("rhs") = "gradient", py::arg("params") = Params{});
  m.def(
      "soliton",
      [](const std::string& src, const std::string& kind, const Params& p) {
        return report_soliton(resolve(src, p), parse_rhs_kind(kind)).dump();
      },
      py::arg("scenario"), py::arg("rhs") = "gradient", py::arg("params") = Params{});
  m.def(
      "stability",
      [](const std::string& src, std::optional<std::string> family, double lambda, const Params& p) {
        return report_stability(resolve(src, p), family, lambda).dump();
      },
      py::arg("scenario"), py::arg("family") = py::none(), py::arg("lambda_") = -3.0, py::arg("params") = Params{});
  m.def(
      "reproduce", [](const std::string& src, const Params& p) { return report_reproduce(resolve(src, p)).dump(); },
      py::arg("scenario"), py::arg("params") = Params{});
  m.def(
      "integrate",
      [](const std::string& src, const std::string& kind, double t_end, double dt, double lambda, bool convergence,
         const Params& p) {
        IntegrateOptions opt;
        opt.kind = parse_rhs_kind(kind);
        opt.t_end = t_end;
        opt.dt = dt;
        opt.lambda = lambda;
        IntegrateReport r = report_integrate(resolve(src, p), opt, convergence);
        return py::make_tuple(r.summary.dump(), r.csv);
      },
      py::arg("scenario"), py::arg("rhs") = "gradient", py::arg("t_end") = 1.0, py::arg("dt") = 1e-2,
      py::arg("lambda_") = 0.0, py::arg("convergence") = false, py::arg("params") = Params{});
  m.def(
      "rhs_matrix",
      [](const std::string& src, const std::string& kind, const Params& p) {
        Scenario s = resolve(src, p);
        StateGeometry sg(s.phi(), s.metric_object(), s.algebra());
        return Mat8(compute_rhs(parse_rhs_kind(kind), sg).A);
      },
      py::arg("scenario"), py::arg("rhs") = "gradient", py::arg("params") = Params{});
  m.def(
      "ricci",
      [](const std::string& src, const Params& p) {
        Scenario s = resolve(src, p);
        StateGeometry sg(s.phi(), s.metric_object(), s.algebra());
        return Mat8(ricci_raw(sg.torsion.T, sg.geo));
      },
      py::arg("scenario"), py::arg("params") = Params{});
}
