#include "solhom/fixtures.hpp"

#include <sstream>

namespace solhom {

namespace {

constexpr const char* kSolenoidPrefix = "solenoid:";

struct TransferFixture {
  std::vector<FgAbGroup> groups;
  std::vector<IntMatrix> transfers;
  std::vector<std::string> generators;  // per degree
  std::vector<std::string> maps;        // per degree
};

TransferFixture klein() {
  // H_*(Klein bottle) with the transfer of the 3-fold cover unwinding b.
  return {{FgAbGroup(1, {}), FgAbGroup(1, {2}), FgAbGroup()},
          {IntMatrix{{9}}, IntMatrix{{3, 0}, {0, 1}}, IntMatrix(0, 0)},
          {"[pt]", "[b] (free), [a] (order 2)", "none"},
          {"[pt] ↦ 9[pt] (two transfers composed)", "[a] ↦ [g(a)], [b] ↦ 3[g(b)]", "0"}};
}

TransferFixture point() { return {{FgAbGroup(1, {})}, {IntMatrix{{1}}}, {"[pt]"}, {"[pt] ↦ [pt]"}}; }

struct SolenoidFixture {
  std::string min_poly;
  std::string summary;
};

const std::vector<std::pair<std::string, SolenoidFixture>>& solenoid_fixtures() {
  static const std::vector<std::pair<std::string, SolenoidFixture>> list{
      {"torus-golden", {"x^2 - x - 1", "c = (1 + sqrt(5))/2, the golden toral automorphism"}},
      {"sqrt-minus-5", {"x^2 - x + 3/2", "c = (1 + sqrt(-5))/2 in Q(sqrt(-5))"}},
  };
  return list;
}

std::string render_matrix_rows(const IntMatrix& m) {
  if (m.rows() == 0) return "[]";
  return to_string(m);
}

}  // namespace

std::vector<FixtureInfo> fixture_list() {
  std::vector<FixtureInfo> out{{"klein", "transfer", "Klein bottle with the 3-fold transfer tower"},
                               {"point", "transfer", "one-point space"}};
  for (const auto& [name, f] : solenoid_fixtures()) out.push_back({name, "solenoid", f.summary});
  out.push_back({"solenoid:q/p", "solenoid", "c = q/p for coprime integers q, p"});
  return out;
}

std::string fixture_details(const std::string& name) {
  std::ostringstream os;
  if (name == "klein" || name == "point") {
    const TransferFixture f = name == "klein" ? klein() : point();
    os << name << " (transfer tower)\n";
    for (std::size_t k = 0; k < f.groups.size(); ++k) {
      os << "  H_" << k << " = " << f.groups[k].to_string() << "\n";
      os << "    generators: " << f.generators[k] << "\n";
      os << "    transfer:   " << f.maps[k] << "\n";
      os << "    matrix:     " << render_matrix_rows(f.transfers[k]) << "\n";
    }
    return os.str();
  }
  for (const auto& [n, f] : solenoid_fixtures())
    if (n == name) {
      os << name << " (solenoid)\n  " << f.summary << "\n  min poly: " << f.min_poly << "\n";
      return os.str();
    }
  if (name.rfind(kSolenoidPrefix, 0) == 0) {
    const Rat c = parse_rational(name.substr(std::string(kSolenoidPrefix).size()));
    os << name << " (solenoid)\n  c = " << to_string(c) << "\n";
    return os.str();
  }
  throw UnknownFixture("unknown fixture '" + name + "'");
}

GradedGroup fixture_homology(const std::string& name) {
  if (name == "klein") {
    const auto f = klein();
    return transfer_colimit(f.groups, f.transfers);
  }
  if (name == "point") {
    const auto f = point();
    return transfer_colimit(f.groups, f.transfers);
  }
  for (const auto& [n, f] : solenoid_fixtures())
    if (n == name) return groupoid_homology(build_system(parse_polynomial(f.min_poly), std::nullopt));
  if (name.rfind(kSolenoidPrefix, 0) == 0)
    return groupoid_homology(build_system(parse_rational(name.substr(std::string(kSolenoidPrefix).size()))));
  throw UnknownFixture("unknown fixture '" + name + "'");
}

std::vector<NamedColimit> named_colimits(const NumberField& K) {
  std::vector<NamedColimit> out;
  if (K.degree() != 2 || K.quadratic_radicand() != Int(-5)) return out;
  const NfElement r = *K.quadratic_root();
  const RatMatrix L = RatMatrix::identity(2);
  const NfElement two = K.from_rational(2);
  out.push_back({"Z[sqrt(-5), 1/2, 1/(1 - sqrt(-5))]", ColimitGroup(L, K.mult_matrix(K.mul(two, K.sub(K.one(), r))))});
  out.push_back({"Z[sqrt(-5), 1/2, 1/(1 + sqrt(-5))]", ColimitGroup(L, K.mult_matrix(K.mul(two, K.add(K.one(), r))))});
  return out;
}

}  // namespace solhom
