// Python bindings.  Inputs and outputs cross the boundary as JSON text; the Python package
// converts to and from dictionaries.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "brumer/conjecture.hpp"
#include "brumer/json_io.hpp"
#include "brumer/lvalues.hpp"

namespace py = pybind11;
using namespace brumer;

namespace {

std::string character_table_json(const std::string& group) {
  TablePtr t = character_table(group_from_json(Json::parse(group)).group);
  Json out = character_table_to_json(*t);
  out["order"] = t->group()->order();
  out["verified"] = verify_table(*t).empty();
  return out.dump();
}

std::string classify_json(const std::string& input, std::uint64_t p) {
  Json j = Json::parse(input);
  GroupPtr g = j.contains("group") && j["group"].is_object() ? plus_quotient(extension_from_json(j)).group
                                                             : group_from_json(j).group;
  return theorem_to_json(*g, classify_theorem(g, p)).dump();
}

std::string stickelberger_json(const std::string& extension, const std::optional<std::vector<std::string>>& t) {
  ExtensionDatum d = extension_from_json(Json::parse(extension));
  StickelbergerResult s = stickelberger(d, t);
  Json out;
  out["theta"] = center_element_to_text(s.theta, d.j);
  out["stickelberger"] = stickelberger_to_json(s);
  out["integrality"] = integrality_to_json(integrality_report(s.theta));
  return out.dump();
}

std::string check_json(const std::string& mode, const std::string& extension, std::uint64_t p, unsigned precision,
                       int unit_bound) {
  ExtensionDatum d = extension_from_json(Json::parse(extension));
  RunConfig cfg{precision, unit_bound, 1};
  if (mode == "brumer") return verdict_to_json(brumer_check(d, p, cfg)).dump();
  if (mode == "bs") return verdict_to_json(bs_antiunit_check(d, p, cfg)).dump();
  if (mode == "dual-sbs") return verdict_to_json(dual_sbs_check(d, p, cfg)).dump();
  throw InputError("unknown check mode '" + mode + "'");
}

std::string quadratic_l0(long d) { return bernoulli_L0(DirichletCharacter::kronecker(d)).to_string(); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ArithmeticError);
  py::register_exception<nlohmann::ordered_json::exception>(m, "JsonError", PyExc_ValueError);

  m.def("character_table", &character_table_json, py::arg("group"), py::call_guard<py::gil_scoped_release>());
  m.def("classify", &classify_json, py::arg("input"), py::arg("p"), py::call_guard<py::gil_scoped_release>());
  m.def("stickelberger", &stickelberger_json, py::arg("extension"), py::arg("T") = std::nullopt,
        py::call_guard<py::gil_scoped_release>());
  m.def("check", &check_json, py::arg("mode"), py::arg("extension"), py::arg("p"), py::arg("precision") = 20,
        py::arg("unit_bound") = 6, py::call_guard<py::gil_scoped_release>());
  m.def("quadratic_l0", &quadratic_l0, py::arg("d"), "L(0, (d/.)) for a negative fundamental discriminant d.");
}
