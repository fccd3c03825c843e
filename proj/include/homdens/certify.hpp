#pragma once

#include <json.hpp>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "homdens/graph.hpp"

namespace homdens {

enum class Status { Unknown, Good, ExtraGood };

std::string to_string(Status s);
Status status_from_string(const std::string& s);

/// A replayable derivation node: the conclusion graph and status, the rule
/// that produced it, rule-specific witness data, and premise certificates.
struct Certificate {
  Graph graph;
  Status status = Status::Unknown;
  std::string rule;
  nlohmann::ordered_json ruleData = nlohmann::ordered_json::object();
  std::vector<Certificate> premises;
};

struct CertifyResult {
  Status status = Status::Unknown;
  std::optional<Certificate> certificate;
};

struct ReplayResult {
  bool ok = false;
  std::string reason;  // located, e.g. "premises[0]: vertex 3 is not a leaf"
};

// Rule identifiers as they appear in certificates.
namespace rules {
inline constexpr const char* kBipartiteSmall = "BASE-BIPARTITE-SMALL";
inline constexpr const char* kNormingSub = "BASE-NORMING-SUB";
inline constexpr const char* kComplete = "BASE-COMPLETE";
inline constexpr const char* kCocktail = "BASE-COCKTAIL";
inline constexpr const char* kTreeUnicyclic = "BASE-TREE-UNICYCLIC";
inline constexpr const char* kTheta = "BASE-THETA";
inline constexpr const char* kBicyclic = "BASE-BICYCLIC";
inline constexpr const char* kComponents = "RULE-COMPONENTS";
inline constexpr const char* kVtUpgrade = "RULE-VT-UPGRADE";
inline constexpr const char* kLeaf = "RULE-LEAF";
inline constexpr const char* kPendantCycle = "RULE-PENDANT-CYCLE";
inline constexpr const char* kMultitreeGlue = "RULE-MULTITREE-GLUE";
inline constexpr const char* kDominate1 = "RULE-DOMINATE-1";
inline constexpr const char* kDominate2 = "RULE-DOMINATE-2";
inline constexpr const char* kCoerce = "COERCE";
}  // namespace rules

/// Backward-chaining certifier with a status memo keyed by canonical form
/// and remaining depth. Safe for concurrent certify calls.
class Certifier {
 public:
  explicit Certifier(int maxDepth = 16) : maxDepth_(maxDepth) {}

  CertifyResult certify(const Graph& g) { return certify(g, maxDepth_); }
  CertifyResult certify(const Graph& g, int depth);

 private:
  friend CertifyResult certify(const Graph&, int);
  CertifyResult certify_connected(const Graph& g, int depth);

  int maxDepth_;
  std::mutex mutex_;
  std::map<std::pair<std::string, int>, Status> statusMemo_;
};

/// One-shot certification of a single graph.
CertifyResult certify(const Graph& g, int maxDepth = 16);

/// Re-verifies every structural side condition of a certificate without
/// re-running the search. Returns false with a located reason on the first
/// violated condition.
ReplayResult replay_certificate(const Certificate& c);

struct CatalogRow {
  Graph graph;
  std::string canonicalLabel;
  Status status = Status::Unknown;
  std::optional<Certificate> certificate;
};

/// One row per connected isomorphism class with at most maxN vertices,
/// ordered by canonical label.
std::vector<CatalogRow> classify_catalog(int maxN, int maxDepth = 16);

}  // namespace homdens
