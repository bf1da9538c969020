#pragma once

// Analysis reports: the full pipeline for one input, a JSON document with a
// stable schema, Markdown rendered from that JSON, and a content-addressed
// result cache.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "solhom/homology.hpp"

namespace solhom {

inline constexpr int kSchemaVersion = 1;

struct AnalysisOptions {
  std::optional<std::string> c;         ///< rational input
  std::optional<std::string> min_poly;  ///< or a minimal polynomial in x
  std::optional<std::string> element;   ///< optional element of Q[x]/(min_poly)
  bool stable = true;
  bool unstable = true;
  unsigned lefschetz = 6;
  double cap_multiplier = 10.0;
};

struct PlaceRow {
  std::string kind;
  std::string prime;  ///< label, empty for archimedean places
  std::string norm;
  unsigned e = 0, f = 0;
  long v_c = 0;
  bool contracting = false;
  unsigned dim_R = 0;
  friend bool operator==(const PlaceRow&, const PlaceRow&) = default;
};

struct SignatureRow {
  std::size_t q_rank = 0;
  std::map<std::string, std::size_t> mod_p;
  std::string torsion;
  friend bool operator==(const SignatureRow&, const SignatureRow&) = default;
};

struct GroupRow {
  int degree = 0;
  std::size_t rank = 0;
  std::string name;
  std::string provenance;
  std::string action;
  std::vector<std::vector<std::string>> lattice;
  std::vector<std::vector<std::string>> endo;
  SignatureRow signature;
  friend bool operator==(const GroupRow&, const GroupRow&) = default;
};

struct KRow {
  std::string group;  ///< "K0" or "K1"
  std::size_t rank = 0;
  std::string name;
  std::string provenance;
  std::vector<int> finite_degrees;
  std::string hk_verdict;
  friend bool operator==(const KRow&, const KRow&) = default;
};

struct SideReport {
  std::string side;
  std::string c;
  std::size_t d = 0;
  std::string N;
  unsigned h = 1;
  std::string g;
  std::vector<GroupRow> homology;
  std::vector<KRow> k_theory;
  bool rank_identity = true;
  friend bool operator==(const SideReport&, const SideReport&) = default;
};

struct LefschetzRow {
  unsigned long n = 0;
  std::string trace;
  std::string fixed_points;
  friend bool operator==(const LefschetzRow&, const LefschetzRow&) = default;
};

struct AnalysisReport {
  int schema_version = kSchemaVersion;
  std::string input_c, input_min_poly, input_element;
  std::string field_poly;  ///< defining polynomial of theta = scale * x
  std::string scale;
  std::size_t degree = 1;
  std::string c;
  std::string c_min_poly;
  bool ring_is_integers = false;
  std::vector<PlaceRow> places;
  std::string N;
  std::size_t d = 0;
  unsigned h = 1;
  std::string g;
  std::vector<SideReport> sides;
  std::vector<LefschetzRow> lefschetz;
  double elapsed_ms = 0;
  friend bool operator==(const AnalysisReport&, const AnalysisReport&) = default;
};

void to_json(nlohmann::json& j, const AnalysisReport& r);
void from_json(const nlohmann::json& j, AnalysisReport& r);

/// Runs the pipeline. Throws ParseError for malformed input and the library
/// errors for hypothesis violations.
AnalysisReport analyze(const AnalysisOptions& opts);

/// Human-readable rendering of a report's JSON.
std::string render_markdown(const nlohmann::json& report);

/// Kunneth table as JSON: {"schema_version", "left", "right", "degrees": [{"degree", "group"}]}.
nlohmann::json kunneth_json(const std::string& left, const GradedForm& a, const std::string& right, const GradedForm& b);
std::string render_kunneth_markdown(const nlohmann::json& table);

/// Unstable-side homology of a saved report as LocalizedForms; throws
/// AtomClassExceeded when a degree carries no certified name.
GradedForm forms_from_report(const nlohmann::json& report);

/// Process exit status for an exception escaping a command: 1 for malformed
/// input, 2 for hypothesis violations, 3 for failed internal checks.
int exit_code_for(const std::exception& e);
/// Short class name of a library error ("BoundaryRoot", ...), "Error" otherwise.
std::string error_kind(const std::exception& e);

class ResultCache {
 public:
  /// SOLHOM_CACHE_DIR, else ~/.cache/solhom.
  static std::filesystem::path default_directory();
  explicit ResultCache(std::filesystem::path dir = default_directory());

  /// SHA-256 over the schema version and every option that affects the result.
  static std::string key(const AnalysisOptions& opts);
  std::optional<std::string> load(const std::string& key) const;
  void store(const std::string& key, const std::string& text) const;
  const std::filesystem::path& directory() const noexcept { return dir_; }

 private:
  std::filesystem::path dir_;
};

}  // namespace solhom
