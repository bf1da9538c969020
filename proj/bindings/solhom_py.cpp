#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "solhom/errors.hpp"
#include "solhom/fixtures.hpp"
#include "solhom/report.hpp"

namespace py = pybind11;
using namespace solhom;

namespace {

py::object to_pyint(const Int& n) { return py::module_::import("builtins").attr("int")(to_string(n)); }

RatMatrix rat_matrix(const std::vector<std::vector<std::string>>& rows) {
  if (rows.empty()) return RatMatrix(0, 0);
  RatMatrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols()) throw DimensionMismatch("ragged matrix");
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = parse_rational(rows[i][j]);
  }
  return m;
}

std::string analyze_json(std::optional<std::string> c, std::optional<std::string> min_poly, std::optional<std::string> element,
                         const std::string& side, unsigned lefschetz, double cap) {
  if (side != "stable" && side != "unstable" && side != "both") throw ParseError("side must be stable, unstable or both", 0);
  AnalysisOptions o;
  o.c = std::move(c);
  o.min_poly = std::move(min_poly);
  o.element = std::move(element);
  o.stable = side != "unstable";
  o.unstable = side != "stable";
  o.lefschetz = lefschetz;
  o.cap_multiplier = cap;
  return nlohmann::json(analyze(o)).dump();
}

py::tuple membership_py(const std::vector<std::string>& x, const std::vector<std::vector<std::string>>& lattice,
                        const std::vector<std::vector<std::string>>& endo, double cap) {
  RatVector v;
  for (const auto& s : x) v.push_back(parse_rational(s));
  const auto r = membership(v, ColimitGroup(rat_matrix(lattice), rat_matrix(endo)), cap);
  return py::make_tuple(r.member, r.witness, r.bound, r.cap_hit);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact homology and K-theory of algebraic solenoids";

  PyObject* base = py::register_exception<Error>(m, "SolhomError").ptr();
  py::register_exception<ParseError>(m, "ParseError", base);
  py::register_exception<UnknownFixture>(m, "UnknownFixture", base);
  py::register_exception<BoundaryRoot>(m, "BoundaryRoot", base);
  py::register_exception<ZeroInput>(m, "ZeroInput", base);
  py::register_exception<Unsupported>(m, "Unsupported", base);
  py::register_exception<HypothesisN1>(m, "HypothesisN1", base);
  py::register_exception<AtomClassExceeded>(m, "AtomClassExceeded", base);
  py::register_exception<InternalCheckFailure>(m, "InternalCheckFailure", base);

  m.attr("SCHEMA_VERSION") = kSchemaVersion;

  m.def("analyze_json", &analyze_json, py::arg("c") = py::none(), py::arg("min_poly") = py::none(), py::arg("element") = py::none(),
        py::arg("side") = "both", py::arg("lefschetz") = 6, py::arg("cap_multiplier") = 10.0,
        "Run the full analysis and return the report as a JSON string.");
  m.def("render_markdown", [](const std::string& text) { return render_markdown(nlohmann::json::parse(text)); });

  m.def("kunneth_json", [](const std::string& a, const std::string& b) {
    return kunneth_json(a, as_forms(fixture_homology(a)), b, as_forms(fixture_homology(b))).dump();
  });
  m.def("fixtures", [] {
    std::vector<std::tuple<std::string, std::string, std::string>> out;
    for (const auto& f : fixture_list()) out.emplace_back(f.name, f.kind, f.summary);
    return out;
  });
  m.def("fixture_details", &fixture_details);

  m.def("membership", &membership_py, py::arg("x"), py::arg("lattice"), py::arg("endo"), py::arg("cap_multiplier") = 10.0,
        "Decide whether x lies in the union of T^-n L; returns (member, witness, bound, cap_hit).");
  m.def("invariant_factors", [](const std::vector<std::vector<long long>>& rows) {
    IntMatrix A(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < A.cols(); ++j) A(i, j) = static_cast<long>(rows[i].at(j));
    py::list out;
    for (const auto& d : invariant_factors(A)) out.append(to_pyint(d));
    return out;
  });
  m.def("localized_tensor", [](const std::string& a, const std::string& b) {
    return tensor(LocalizedForm::parse(a), LocalizedForm::parse(b)).to_string();
  });
  m.def("localized_tor", [](const std::string& a, const std::string& b) {
    return tor(LocalizedForm::parse(a), LocalizedForm::parse(b)).to_string();
  });
}
