#include "solhom/report.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "solhom/errors.hpp"
#include "solhom/fixtures.hpp"

namespace solhom {

using nlohmann::json;

// ---------------------------------------------------------------------------
// JSON

namespace {

json place_json(const PlaceRow& p) {
  json j{{"kind", p.kind}, {"contracting", p.contracting}};
  if (p.kind == "finite") {
    j["prime"] = p.prime;
    j["norm"] = p.norm;
    j["e"] = p.e;
    j["f"] = p.f;
    j["v_c"] = p.v_c;
  } else {
    j["dim_R"] = p.dim_R;
  }
  return j;
}

PlaceRow place_from(const json& j) {
  PlaceRow p;
  p.kind = j.at("kind").get<std::string>();
  p.contracting = j.at("contracting").get<bool>();
  if (p.kind == "finite") {
    p.prime = j.at("prime").get<std::string>();
    p.norm = j.at("norm").get<std::string>();
    p.e = j.at("e").get<unsigned>();
    p.f = j.at("f").get<unsigned>();
    p.v_c = j.at("v_c").get<long>();
  } else {
    p.dim_R = j.at("dim_R").get<unsigned>();
  }
  return p;
}

json group_json(const GroupRow& g) {
  return {{"degree", g.degree},
          {"rank", g.rank},
          {"name", g.name},
          {"provenance", g.provenance},
          {"action", g.action},
          {"presentation", {{"lattice", g.lattice}, {"endomorphism", g.endo}}},
          {"signature", {{"q_rank", g.signature.q_rank}, {"mod_p", g.signature.mod_p}, {"torsion", g.signature.torsion}}}};
}

GroupRow group_from(const json& j) {
  GroupRow g;
  g.degree = j.at("degree").get<int>();
  g.rank = j.at("rank").get<std::size_t>();
  g.name = j.at("name").get<std::string>();
  g.provenance = j.at("provenance").get<std::string>();
  g.action = j.at("action").get<std::string>();
  g.lattice = j.at("presentation").at("lattice").get<std::vector<std::vector<std::string>>>();
  g.endo = j.at("presentation").at("endomorphism").get<std::vector<std::vector<std::string>>>();
  const json& s = j.at("signature");
  g.signature.q_rank = s.at("q_rank").get<std::size_t>();
  g.signature.mod_p = s.at("mod_p").get<std::map<std::string, std::size_t>>();
  g.signature.torsion = s.at("torsion").get<std::string>();
  return g;
}

json k_json(const KRow& k) {
  return {{"group", k.group}, {"rank", k.rank}, {"name", k.name}, {"provenance", k.provenance},
          {"finite_degrees", k.finite_degrees}, {"hk_verdict", k.hk_verdict}};
}

KRow k_from(const json& j) {
  KRow k;
  k.group = j.at("group").get<std::string>();
  k.rank = j.at("rank").get<std::size_t>();
  k.name = j.at("name").get<std::string>();
  k.provenance = j.at("provenance").get<std::string>();
  k.finite_degrees = j.at("finite_degrees").get<std::vector<int>>();
  k.hk_verdict = j.at("hk_verdict").get<std::string>();
  return k;
}

json side_json(const SideReport& s) {
  json h = json::array(), k = json::array();
  for (const auto& g : s.homology) h.push_back(group_json(g));
  for (const auto& r : s.k_theory) k.push_back(k_json(r));
  return {{"side", s.side}, {"c", s.c}, {"d", s.d}, {"N", s.N}, {"h", s.h}, {"g", s.g},
          {"homology", h}, {"k_theory", k}, {"rank_identity", s.rank_identity}};
}

SideReport side_from(const json& j) {
  SideReport s;
  s.side = j.at("side").get<std::string>();
  s.c = j.at("c").get<std::string>();
  s.d = j.at("d").get<std::size_t>();
  s.N = j.at("N").get<std::string>();
  s.h = j.at("h").get<unsigned>();
  s.g = j.at("g").get<std::string>();
  for (const auto& g : j.at("homology")) s.homology.push_back(group_from(g));
  for (const auto& k : j.at("k_theory")) s.k_theory.push_back(k_from(k));
  s.rank_identity = j.at("rank_identity").get<bool>();
  return s;
}

}  // namespace

void to_json(json& j, const AnalysisReport& r) {
  json places = json::array(), sides = json::array(), lef = json::array();
  for (const auto& p : r.places) places.push_back(place_json(p));
  for (const auto& s : r.sides) sides.push_back(side_json(s));
  for (const auto& l : r.lefschetz) lef.push_back({{"n", l.n}, {"trace", l.trace}, {"fixed_points", l.fixed_points}});
  j = json{{"schema_version", r.schema_version},
           {"input", {{"c", r.input_c}, {"min_poly", r.input_min_poly}, {"element", r.input_element}}},
           {"field", {{"poly", r.field_poly}, {"scale", r.scale}, {"degree", r.degree}}},
           {"c", r.c},
           {"c_min_poly", r.c_min_poly},
           {"ring_is_integers", r.ring_is_integers},
           {"places", places},
           {"N", r.N},
           {"d", r.d},
           {"h", r.h},
           {"g", r.g},
           {"sides", sides},
           {"lefschetz", lef},
           {"timing", {{"elapsed_ms", r.elapsed_ms}}}};
}

void from_json(const json& j, AnalysisReport& r) {
  r.schema_version = j.at("schema_version").get<int>();
  if (r.schema_version != kSchemaVersion)
    throw ParseError("unsupported report schema version " + std::to_string(r.schema_version), 0);
  r.input_c = j.at("input").at("c").get<std::string>();
  r.input_min_poly = j.at("input").at("min_poly").get<std::string>();
  r.input_element = j.at("input").at("element").get<std::string>();
  r.field_poly = j.at("field").at("poly").get<std::string>();
  r.scale = j.at("field").at("scale").get<std::string>();
  r.degree = j.at("field").at("degree").get<std::size_t>();
  r.c = j.at("c").get<std::string>();
  r.c_min_poly = j.at("c_min_poly").get<std::string>();
  r.ring_is_integers = j.at("ring_is_integers").get<bool>();
  r.places.clear();
  for (const auto& p : j.at("places")) r.places.push_back(place_from(p));
  r.N = j.at("N").get<std::string>();
  r.d = j.at("d").get<std::size_t>();
  r.h = j.at("h").get<unsigned>();
  r.g = j.at("g").get<std::string>();
  r.sides.clear();
  for (const auto& s : j.at("sides")) r.sides.push_back(side_from(s));
  r.lefschetz.clear();
  for (const auto& l : j.at("lefschetz"))
    r.lefschetz.push_back({l.at("n").get<unsigned long>(), l.at("trace").get<std::string>(), l.at("fixed_points").get<std::string>()});
  r.elapsed_ms = j.at("timing").at("elapsed_ms").get<double>();
}

// ---------------------------------------------------------------------------
// Pipeline

namespace {

std::vector<std::vector<std::string>> matrix_strings(const RatMatrix& m) {
  std::vector<std::vector<std::string>> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i].push_back(to_string(m(i, j)));
  return out;
}

GroupRow group_row(int degree, const ColimitGroup& G, const std::string& action, const std::vector<NamedColimit>& cands,
                   double cap) {
  GroupRow row;
  row.degree = degree;
  row.rank = G.ambient_rank();
  const EntryName nm = name_entry(G, cands, cap);
  row.name = nm.text;
  row.provenance = nm.provenance;
  row.action = action;
  row.lattice = matrix_strings(G.lattice());
  row.endo = matrix_strings(G.endo());
  const InvariantSignature sig = signature(G);
  row.signature.q_rank = sig.q_rank;
  for (const auto& [p, dim] : sig.mod_p_dims) row.signature.mod_p[to_string(p)] = dim;
  row.signature.torsion = sig.torsion_colimit.to_string();
  return row;
}

SideReport side_report(const SolenoidSystem& sys, Side side, const std::vector<NamedColimit>& cands, double cap) {
  const SolenoidSystem s = side == Side::Unstable ? sys : inverse_system(sys);
  const NumberField& K = s.field();
  SideReport out;
  out.side = to_string(side);
  out.c = K.to_string(s.c);
  out.d = s.d;
  out.N = to_string(s.N);
  out.h = s.h;
  out.g = K.to_string(s.g);
  for (const auto& [deg, e] : groupoid_homology(s).entries) out.homology.push_back(group_row(deg, e.group, e.action, cands, cap));
  const KTheory kt = k_theory(s);
  const HkResult hk = hk_check(s, Side::Unstable, cap);
  for (int i = 0; i < 2; ++i) {
    KRow k;
    k.group = "K" + std::to_string(i);
    k.rank = kt.K[i].ambient_rank();
    const EntryName nm = name_entry(kt.K[i], cands, cap);
    k.name = nm.text;
    k.provenance = nm.provenance;
    k.finite_degrees = kt.finite_degrees[i];
    k.hk_verdict = to_string(hk.verdict[i]);
    out.k_theory.push_back(k);
  }
  out.rank_identity = hk.k_rank[0] + hk.k_rank[1] == hk.h_rank;
  return out;
}

std::string normalized_c(const std::string& c) { return to_string(parse_rational(c)); }
std::string normalized_poly(const std::string& p) { return parse_polynomial(p).to_string(); }

void validate(const AnalysisOptions& opts) {
  if (opts.c.has_value() == opts.min_poly.has_value()) throw ParseError("give exactly one of --c or --min-poly", 0);
  if (opts.element && !opts.min_poly) throw ParseError("--element requires --min-poly", 0);
  if (!(opts.cap_multiplier >= 1.0)) throw ParseError("--cap-multiplier must be at least 1", 0);
  if (!opts.stable && !opts.unstable) throw ParseError("no side selected", 0);
}

}  // namespace

AnalysisReport analyze(const AnalysisOptions& opts) {
  validate(opts);
  const auto start = std::chrono::steady_clock::now();
  const SolenoidSystem sys = opts.c ? build_system(parse_rational(*opts.c))
                                    : build_system(parse_polynomial(*opts.min_poly),
                                                   opts.element ? std::optional<QPoly>(parse_polynomial(*opts.element)) : std::nullopt);
  const NumberField& K = sys.field();
  AnalysisReport r;
  r.input_c = opts.c ? normalized_c(*opts.c) : "";
  r.input_min_poly = opts.min_poly ? normalized_poly(*opts.min_poly) : "";
  r.input_element = opts.element ? normalized_poly(*opts.element) : "";
  r.field_poly = K.min_poly().to_string("theta");
  r.scale = to_string(K.scale());
  r.degree = K.degree();
  r.c = K.to_string(sys.c);
  r.c_min_poly = K.char_poly(sys.c).to_string();
  r.ring_is_integers = sys.ring_is_integers();
  for (const auto& p : sys.places) {
    PlaceRow row;
    row.kind = to_string(p.kind);
    row.contracting = p.contracting;
    row.dim_R = p.dim_R;
    if (p.prime) {
      row.prime = p.prime->label;
      row.norm = to_string(p.prime->norm());
      row.e = p.prime->e;
      row.f = p.prime->f_res;
      row.v_c = p.v_c;
    }
    r.places.push_back(row);
  }
  r.N = to_string(sys.N);
  r.d = sys.d;
  r.h = sys.h;
  r.g = K.to_string(sys.g);

  const auto cands = named_colimits(K);
  if (opts.unstable) r.sides.push_back(side_report(sys, Side::Unstable, cands, opts.cap_multiplier));
  if (opts.stable) r.sides.push_back(side_report(sys, Side::Stable, cands, opts.cap_multiplier));

  for (unsigned long n = 1; n <= opts.lefschetz; ++n) {
    const Rat L = lefschetz_trace(sys, n);
    const Int P = periodic_points(sys, n);
    if (abs(L) != Rat(P)) throw InternalCheckFailure("Lefschetz trace disagrees with the fixed-point count at n = " + std::to_string(n));
    r.lefschetz.push_back({n, to_string(L), to_string(P)});
  }
  r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

// ---------------------------------------------------------------------------
// Markdown

namespace {

std::string md_matrix(const json& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) s += "; ";
    for (std::size_t j = 0; j < m[i].size(); ++j) s += (j ? " " : "") + m[i][j].get<std::string>();
  }
  return s + "]";
}

}  // namespace

std::string render_markdown(const json& r) {
  std::ostringstream os;
  const json& in = r.at("input");
  os << "# Solenoid analysis\n\n";
  if (!in.at("c").get<std::string>().empty())
    os << "Input: c = " << in.at("c").get<std::string>() << "\n\n";
  else {
    os << "Input: min poly " << in.at("min_poly").get<std::string>();
    if (!in.at("element").get<std::string>().empty()) os << ", element " << in.at("element").get<std::string>();
    os << "\n\n";
  }
  os << "- c = " << r.at("c").get<std::string>() << " (min poly " << r.at("c_min_poly").get<std::string>() << ")\n";
  if (r.at("field").at("degree").get<std::size_t>() == 1)
    os << "- field: Q\n";
  else
    os << "- field: theta = " << r.at("field").at("scale").get<std::string>() << " * x, " << r.at("field").at("poly").get<std::string>()
       << " = 0, degree " << r.at("field").at("degree").get<std::size_t>() << "\n";
  os << "- N = " << r.at("N").get<std::string>() << ", d = " << r.at("d").get<std::size_t>() << ", h = " << r.at("h").get<unsigned>()
     << ", g = " << r.at("g").get<std::string>() << "\n";
  if (r.at("ring_is_integers").get<bool>()) os << "- R_c = O_K (no finite places)\n";
  os << "\n## Places\n\n| kind | prime | norm | e | f | v(c) | contracting |\n|---|---|---|---|---|---|---|\n";
  for (const auto& p : r.at("places")) {
    const std::string kind = p.at("kind").get<std::string>();
    const bool yes = p.at("contracting").get<bool>();
    if (kind == "finite")
      os << "| finite | " << p.at("prime").get<std::string>() << " | " << p.at("norm").get<std::string>() << " | " << p.at("e").get<unsigned>()
         << " | " << p.at("f").get<unsigned>() << " | " << p.at("v_c").get<long>() << " | " << (yes ? "yes" : "no") << " |\n";
    else
      os << "| " << kind << " |  |  |  |  |  | " << (yes ? "yes" : "no") << " |\n";
  }
  for (const auto& s : r.at("sides")) {
    os << "\n## " << s.at("side").get<std::string>() << " side (c = " << s.at("c").get<std::string>() << ", d = " << s.at("d").get<std::size_t>()
       << ", N = " << s.at("N").get<std::string>() << ")\n\n";
    os << "| degree | group | provenance | action |\n|---|---|---|---|\n";
    for (const auto& g : s.at("homology"))
      os << "| " << g.at("degree").get<int>() << " | " << g.at("name").get<std::string>() << " | " << g.at("provenance").get<std::string>() << " | "
         << g.at("action").get<std::string>() << " |\n";
    bool first = true;
    for (const auto& g : s.at("homology")) {
      if (g.at("provenance").get<std::string>() != "signature_only") continue;
      if (first) os << "\nPresentations:\n\n";
      first = false;
      const json& sig = g.at("signature");
      os << "- H_" << g.at("degree").get<int>() << ": lattice " << md_matrix(g.at("presentation").at("lattice")) << ", endomorphism "
         << md_matrix(g.at("presentation").at("endomorphism")) << ", q-rank " << sig.at("q_rank").get<std::size_t>() << ", torsion "
         << sig.at("torsion").get<std::string>();
      for (const auto& [p, dim] : sig.at("mod_p").items()) os << ", dim mod " << p << " = " << dim.get<std::size_t>();
      os << "\n";
    }
    os << "\n| K-group | group | exterior degrees | HK |\n|---|---|---|---|\n";
    for (const auto& k : s.at("k_theory")) {
      std::string degs;
      for (const auto& d : k.at("finite_degrees")) degs += (degs.empty() ? "" : ", ") + std::to_string(d.get<int>());
      os << "| " << k.at("group").get<std::string>() << " | " << k.at("name").get<std::string>() << " | " << degs << " | "
         << k.at("hk_verdict").get<std::string>() << " |\n";
    }
  }
  if (!r.at("lefschetz").empty()) {
    os << "\n## Lefschetz traces\n\n| n | trace | fixed points |\n|---|---|---|\n";
    for (const auto& l : r.at("lefschetz"))
      os << "| " << l.at("n").get<unsigned long>() << " | " << l.at("trace").get<std::string>() << " | " << l.at("fixed_points").get<std::string>()
         << " |\n";
  }
  return os.str();
}

json kunneth_json(const std::string& left, const GradedForm& a, const std::string& right, const GradedForm& b) {
  json degs = json::array();
  for (const auto& [k, f] : kunneth(a, b)) degs.push_back({{"degree", k}, {"group", f.to_string()}});
  return {{"schema_version", kSchemaVersion}, {"left", left}, {"right", right}, {"degrees", degs}};
}

std::string render_kunneth_markdown(const json& t) {
  std::ostringstream os;
  os << "# " << t.at("left").get<std::string>() << " x " << t.at("right").get<std::string>() << "\n\n| degree | group |\n|---|---|\n";
  for (const auto& d : t.at("degrees")) os << "| " << d.at("degree").get<int>() << " | " << d.at("group").get<std::string>() << " |\n";
  return os.str();
}

GradedForm forms_from_report(const json& report) {
  AnalysisReport r = report.get<AnalysisReport>();
  for (const auto& s : r.sides) {
    if (s.side != "unstable") continue;
    GradedForm out;
    for (const auto& g : s.homology) {
      if (g.provenance == "signature_only" || g.provenance == "equal_commuting")
        throw AtomClassExceeded("degree " + std::to_string(g.degree) + " has no certified form in the atom class");
      const LocalizedForm f = LocalizedForm::parse(g.name);
      if (!f.is_zero()) out[g.degree] = f;
    }
    return out;
  }
  throw AtomClassExceeded("report carries no unstable-side homology");
}

// ---------------------------------------------------------------------------

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const UnknownFixture*>(&e) || dynamic_cast<const json::exception*>(&e)) return 1;
  if (dynamic_cast<const InternalCheckFailure*>(&e) || dynamic_cast<const FlatteningFailure*>(&e)) return 3;
  if (dynamic_cast<const BoundaryRoot*>(&e) || dynamic_cast<const ZeroInput*>(&e) || dynamic_cast<const Unsupported*>(&e) ||
      dynamic_cast<const IndexObstruction*>(&e) || dynamic_cast<const HypothesisN1*>(&e) || dynamic_cast<const DegenerateFix*>(&e) ||
      dynamic_cast<const NotAnElement*>(&e) || dynamic_cast<const AtomClassExceeded*>(&e) || dynamic_cast<const OutOfRange*>(&e) ||
      dynamic_cast<const NotPrime*>(&e))
    return 2;
  return 3;
}

std::string error_kind(const std::exception& e) {
#define SOLHOM_KIND(T) \
  if (dynamic_cast<const T*>(&e)) return #T;
  SOLHOM_KIND(ParseError)
  SOLHOM_KIND(UnknownFixture)
  SOLHOM_KIND(BoundaryRoot)
  SOLHOM_KIND(ZeroInput)
  SOLHOM_KIND(Unsupported)
  SOLHOM_KIND(IndexObstruction)
  SOLHOM_KIND(HypothesisN1)
  SOLHOM_KIND(DegenerateFix)
  SOLHOM_KIND(NotAnElement)
  SOLHOM_KIND(AtomClassExceeded)
  SOLHOM_KIND(OutOfRange)
  SOLHOM_KIND(NotPrime)
  SOLHOM_KIND(NotContained)
  SOLHOM_KIND(DimensionMismatch)
  SOLHOM_KIND(NonCommuting)
  SOLHOM_KIND(FlatteningFailure)
  SOLHOM_KIND(InternalCheckFailure)
#undef SOLHOM_KIND
  if (dynamic_cast<const json::exception*>(&e)) return "JsonError";
  return "Error";
}

// ---------------------------------------------------------------------------
// Cache

std::filesystem::path ResultCache::default_directory() {
  if (const char* dir = std::getenv("SOLHOM_CACHE_DIR"); dir && *dir) return dir;
  if (const char* home = std::getenv("HOME"); home && *home) return std::filesystem::path(home) / ".cache" / "solhom";
  return std::filesystem::temp_directory_path() / "solhom-cache";
}

ResultCache::ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::string ResultCache::key(const AnalysisOptions& o) {
  std::ostringstream material;
  material << "schema=" << kSchemaVersion << "\nc=" << (o.c ? normalized_c(*o.c) : "") << "\nmin_poly=" << (o.min_poly ? normalized_poly(*o.min_poly) : "")
           << "\nelement=" << (o.element ? normalized_poly(*o.element) : "") << "\nstable=" << o.stable << "\nunstable=" << o.unstable
           << "\nlefschetz=" << o.lefschetz << "\ncap=" << std::setprecision(17) << o.cap_multiplier << "\n";
  const std::string m = material.str();
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(m.data(), m.size(), digest, &len, EVP_sha256(), nullptr) != 1) throw InternalCheckFailure("SHA-256 failed");
  std::ostringstream hex;
  for (unsigned i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  return hex.str();
}

std::optional<std::string> ResultCache::load(const std::string& key) const {
  std::ifstream in(dir_ / (key + ".json"), std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void ResultCache::store(const std::string& key, const std::string& text) const {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) return;  // caching is best effort
  const auto final_path = dir_ / (key + ".json");
  const auto tmp = dir_ / (key + ".json.tmp");
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) return;
    out << text;
  }
  std::filesystem::rename(tmp, final_path, ec);
}

}  // namespace solhom
