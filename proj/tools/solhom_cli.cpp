// solhom: homology and K-theory of algebraic solenoids from the command line.

#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "solhom/errors.hpp"
#include "solhom/fixtures.hpp"
#include "solhom/report.hpp"

using namespace solhom;
using nlohmann::json;

namespace {

struct AnalyzeArgs {
  std::string c, min_poly, element, side = "both";
  unsigned lefschetz = 6;
  double cap = 10.0;
  bool json = false, no_cache = false;
};

int run_analyze(const AnalyzeArgs& a) {
  AnalysisOptions o;
  if (!a.c.empty()) o.c = a.c;
  if (!a.min_poly.empty()) o.min_poly = a.min_poly;
  if (!a.element.empty()) o.element = a.element;
  o.stable = a.side != "unstable";
  o.unstable = a.side != "stable";
  o.lefschetz = a.lefschetz;
  o.cap_multiplier = a.cap;

  std::string text;
  const ResultCache cache;
  std::string key;
  if (!a.no_cache) {
    key = ResultCache::key(o);
    if (auto hit = cache.load(key)) text = *hit;
  }
  if (text.empty()) {
    text = json(analyze(o)).dump(2) + "\n";
    if (!a.no_cache) cache.store(key, text);
  }
  if (a.json)
    std::cout << text;
  else
    std::cout << render_markdown(json::parse(text));
  return 0;
}

GradedForm resolve(const std::string& name) {
  for (const auto& f : fixture_list())
    if (f.name == name) return as_forms(fixture_homology(name));
  if (name.rfind("solenoid:", 0) == 0) return as_forms(fixture_homology(name));
  if (std::filesystem::is_regular_file(name)) {
    std::ifstream in(name);
    return forms_from_report(json::parse(in));
  }
  throw UnknownFixture("unknown fixture '" + name + "' (not a registry name or a saved report)");
}

int run_kunneth(const std::string& a, const std::string& b, bool as_json) {
  const json t = kunneth_json(a, resolve(a), b, resolve(b));
  if (as_json)
    std::cout << t.dump(2) << "\n";
  else
    std::cout << render_kunneth_markdown(t);
  return 0;
}

int run_fixtures(bool as_json, const std::string& show) {
  if (!show.empty()) {
    const std::string details = fixture_details(show);
    if (as_json)
      std::cout << json{{"name", show}, {"details", details}}.dump(2) << "\n";
    else
      std::cout << details;
    return 0;
  }
  const auto list = fixture_list();
  if (as_json) {
    json arr = json::array();
    for (const auto& f : list) arr.push_back({{"name", f.name}, {"kind", f.kind}, {"summary", f.summary}});
    std::cout << arr.dump(2) << "\n";
  } else {
    for (const auto& f : list) std::cout << f.name << "\t" << f.kind << "\t" << f.summary << "\n";
  }
  return 0;
}

int run_selftest() {
  int failures = 0;
  auto check = [&](const std::string& what, bool ok) {
    std::cout << (ok ? "PASS " : "FAIL ") << what << "\n";
    if (!ok) ++failures;
  };
  const auto s = build_system(Rat(3, 2));
  const auto H = groupoid_homology(s);
  check("c = 3/2 has N = 3", s.N == 3);
  check("c = 3/2 H_0 = Z[1/3]", name_entry(H.entries.at(0).group).text == "Z[1/3]");
  check("c = 3/2 H_1 = Z[1/2]", name_entry(H.entries.at(1).group).text == "Z[1/2]");
  const auto hk = hk_check(s);
  check("c = 3/2 HK equal", hk.verdict[0] == HkVerdict::Equal && hk.verdict[1] == HkVerdict::Equal);
  const auto k = fixture_homology("klein");
  check("klein H_1 = Z[1/3] + Z/2", name_entry(k.entries.at(1).group).text == "Z[1/3] + Z/2");
  bool lef = true;
  for (unsigned n = 1; n <= 4; ++n) lef = lef && abs(lefschetz_trace(s, n)) == Rat(periodic_points(s, n));
  check("Lefschetz traces match fixed points", lef);
  return failures ? 3 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Homology and K-theory of algebraic solenoids"};
  app.require_subcommand(1);

  AnalyzeArgs aa;
  auto* analyze_cmd = app.add_subcommand("analyze", "Analyze the solenoid of an algebraic number c");
  auto* opt_c = analyze_cmd->add_option("--c", aa.c, "Rational c, e.g. 3/2");
  auto* opt_mp = analyze_cmd->add_option("--min-poly", aa.min_poly, "Minimal polynomial in x, e.g. \"x^2 - x + 3/2\"");
  auto* opt_el = analyze_cmd->add_option("--element", aa.element, "c as a polynomial in the root x (default: x)");
  opt_c->excludes(opt_mp);
  opt_el->needs(opt_mp);
  analyze_cmd->add_option("--side", aa.side, "Which side to report")->check(CLI::IsMember({"stable", "unstable", "both"}));
  analyze_cmd->add_option("--lefschetz", aa.lefschetz, "Tabulate traces for n = 1..N");
  analyze_cmd->add_option("--cap-multiplier", aa.cap, "Membership search cap as a multiple of the proven bound");
  analyze_cmd->add_flag("--json", aa.json, "Emit the JSON report");
  analyze_cmd->add_flag("--no-cache", aa.no_cache, "Bypass the result cache");

  std::string ka, kb;
  bool kjson = false;
  auto* kunneth_cmd = app.add_subcommand("kunneth", "Kunneth table of two fixtures or saved reports");
  kunneth_cmd->add_option("left", ka)->required();
  kunneth_cmd->add_option("right", kb)->required();
  kunneth_cmd->add_flag("--json", kjson);

  bool fjson = false;
  std::string show;
  auto* fixtures_cmd = app.add_subcommand("fixtures", "List built-in fixtures");
  fixtures_cmd->add_flag("--json", fjson);
  fixtures_cmd->add_option("--show", show, "Describe one fixture");

  auto* selftest_cmd = app.add_subcommand("selftest", "Run built-in consistency checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (analyze_cmd->parsed()) {
      if (aa.c.empty() && aa.min_poly.empty()) throw ParseError("give exactly one of --c or --min-poly", 0);
      return run_analyze(aa);
    }
    if (kunneth_cmd->parsed()) return run_kunneth(ka, kb, kjson);
    if (fixtures_cmd->parsed()) return run_fixtures(fjson, show);
    if (selftest_cmd->parsed()) return run_selftest();
  } catch (const std::exception& e) {
    std::cerr << "error: " << error_kind(e) << ": " << e.what() << "\n";
    return exit_code_for(e);
  }
  return 0;
}
