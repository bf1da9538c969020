#include <filesystem>
#include <random>

#include "doctest.h"
#include "solhom/errors.hpp"
#include "solhom/fixtures.hpp"
#include "solhom/report.hpp"

using namespace solhom;
using nlohmann::json;

namespace {

AnalysisOptions rational(const std::string& c) {
  AnalysisOptions o;
  o.c = c;
  return o;
}

AnalysisOptions poly(const std::string& p) {
  AnalysisOptions o;
  o.min_poly = p;
  return o;
}

const GroupRow& degree(const SideReport& s, int k) {
  for (const auto& g : s.homology)
    if (g.degree == k) return g;
  FAIL("missing degree " << k);
  throw;
}

std::filesystem::path scratch_dir() {
  const auto dir = std::filesystem::temp_directory_path() / ("solhom-test-" + std::to_string(std::random_device{}()));
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("report for c = 3/2") {
  auto o = rational("3/2");
  o.lefschetz = 4;
  const auto r = analyze(o);
  CHECK(r.N == "3");
  CHECK(r.d == 0);
  REQUIRE(r.sides.size() == 2);
  CHECK(r.sides[0].side == "unstable");
  CHECK(degree(r.sides[0], 0).name == "Z[1/3]");
  CHECK(degree(r.sides[0], 1).name == "Z[1/2]");
  CHECK(degree(r.sides[1], -1).name == "Z[1/2]");
  CHECK(degree(r.sides[1], 0).name == "Z[1/3]");
  REQUIRE(r.lefschetz.size() == 4);
  const std::vector<std::string> fixed{"1", "5", "19", "65"};
  for (std::size_t i = 0; i < 4; ++i) CHECK(r.lefschetz[i].fixed_points == fixed[i]);
  CHECK(r.sides[0].k_theory[0].hk_verdict == "equal");

  const std::string md = render_markdown(json(r));
  CHECK(md.find("| 0 | Z[1/3] |") != std::string::npos);
  CHECK(md.find("| 4 | 65 | 65 |") != std::string::npos);
}

TEST_CASE("report for Q(sqrt(-5))") {
  const auto r = analyze(poly("x^2 - x + 3/2"));
  CHECK(r.N == "3");
  CHECK(r.h == 2);
  const auto& h1 = degree(r.sides[0], 1);
  CHECK(h1.name == "Z[sqrt(-5), 1/2, 1/(1 - sqrt(-5))]");
  CHECK(h1.provenance == "equal_commuting");
  CHECK(h1.signature.q_rank == 2);
  CHECK(degree(r.sides[1], -1).name == "Z[sqrt(-5), 1/2, 1/(1 + sqrt(-5))]");

  // uncertified groups are shown as presentations
  const auto plain = analyze(poly("x^2 + 3"));
  bool saw_presentation = false;
  for (const auto& g : plain.sides[0].homology)
    if (g.provenance == "signature_only") saw_presentation = true;
  CHECK(saw_presentation);
  CHECK(render_markdown(json(plain)).find("Presentations:") != std::string::npos);
}

TEST_CASE("json round trip") {
  for (const auto& o : {rational("3/2"), rational("2"), rational("-7/4"), poly("x^2 - x + 3/2"), poly("x^2 - x - 1"), poly("x^3 - 2")}) {
    const AnalysisReport r = analyze(o);
    const std::string text = json(r).dump(2);
    const AnalysisReport back = json::parse(text).get<AnalysisReport>();
    CHECK(back == r);
    CHECK(json(back).dump(2) == text);
  }
  json bad = json(analyze(rational("2")));
  bad["schema_version"] = 99;
  CHECK_THROWS_AS(bad.get<AnalysisReport>(), ParseError);
}

TEST_CASE("input validation") {
  AnalysisOptions both = rational("2");
  both.min_poly = "x^2 - 2";
  CHECK_THROWS_AS(analyze(both), ParseError);
  CHECK_THROWS_AS(analyze(AnalysisOptions{}), ParseError);
  AnalysisOptions el = rational("2");
  el.element = "x";
  CHECK_THROWS_AS(analyze(el), ParseError);
  CHECK_THROWS_AS(analyze(rational("1/0")), ParseError);
  CHECK_THROWS_AS(analyze(poly("x^2 + $")), ParseError);
  CHECK_THROWS_AS(analyze(rational("1")), BoundaryRoot);
}

TEST_CASE("exit codes") {
  CHECK(exit_code_for(ParseError("x", 0)) == 1);
  CHECK(exit_code_for(UnknownFixture("x")) == 1);
  CHECK(exit_code_for(BoundaryRoot("x")) == 2);
  CHECK(exit_code_for(ZeroInput("x")) == 2);
  CHECK(exit_code_for(HypothesisN1("x")) == 2);
  CHECK(exit_code_for(Unsupported("x")) == 2);
  CHECK(exit_code_for(InternalCheckFailure("x")) == 3);
  CHECK(exit_code_for(FlatteningFailure("x")) == 3);
  CHECK(exit_code_for(std::runtime_error("x")) == 3);
  CHECK(error_kind(BoundaryRoot("x")) == "BoundaryRoot");
}

TEST_CASE("result cache") {
  const auto dir = scratch_dir();
  const ResultCache cache(dir);
  const auto o = poly("x^2 - x + 3/2");
  const std::string key = ResultCache::key(o);
  CHECK(key.size() == 64);
  CHECK(ResultCache::key(poly("x^2-x+3/2")) == key);
  AnalysisOptions other = o;
  other.lefschetz = 3;
  CHECK(ResultCache::key(other) != key);
  CHECK(ResultCache::key(poly("x^2 - x + 5/2")) != key);

  CHECK_FALSE(cache.load(key));
  const std::string cold = json(analyze(o)).dump(2) + "\n";
  cache.store(key, cold);
  const auto hit = cache.load(key);
  REQUIRE(hit);
  CHECK(*hit == cold);
  std::filesystem::remove_all(dir);
}

TEST_CASE("fixtures") {
  CHECK(fixture_list().size() >= 4);
  CHECK(fixture_details("klein").find("[a] ↦ [g(a)], [b] ↦ 3[g(b)]") != std::string::npos);
  CHECK_THROWS_AS(fixture_details("nope"), UnknownFixture);
  CHECK_THROWS_AS(fixture_homology("nope"), UnknownFixture);
  CHECK(as_forms(fixture_homology("solenoid:3/2")).at(1).to_string() == "Z[1/2]");

  const auto tab = kunneth_json("solenoid:3/2", as_forms(fixture_homology("solenoid:3/2")), "solenoid:3/2",
                                as_forms(fixture_homology("solenoid:3/2")));
  CHECK(tab["degrees"][1]["group"] == "Z[1/6]^2");
  CHECK(render_kunneth_markdown(tab).find("| 1 | Z[1/6]^2 |") != std::string::npos);

  CHECK(forms_from_report(json(analyze(rational("3/2")))) == as_forms(fixture_homology("solenoid:3/2")));
  CHECK_THROWS_AS(forms_from_report(json(analyze(poly("x^2 - x + 3/2")))), AtomClassExceeded);
}
