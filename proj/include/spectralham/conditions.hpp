#pragma once

#include <atomic>
#include <cstddef>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "spectralham/families.hpp"
#include "spectralham/graph.hpp"
#include "spectralham/spectral.hpp"

namespace spectralham {

enum class TheoremId { THM_NI16, THM_1, THM_LN_ADJ, THM_LN_Q, THM_2, EDGE_THM, EDGE_THM_BIP };
enum class Conclusion { hamiltonian_guaranteed, exception_member, not_applicable };

const char* to_string(TheoremId id);
TheoremId parse_theorem_id(std::string_view text);
const char* to_string(Conclusion c);

struct Hypothesis {
  std::string name;
  bool holds = false;
  std::string detail;
};

/// A recognized exception: the family it belongs to, the intact-graph
/// reconstruction and the vertex mapping G -> reconstruction labels.
struct ExceptionMatch {
  std::string family;
  std::optional<FamilyMember> reconstruction;
  std::vector<Vertex> mapping;
  std::string detail;
};

struct Recognition {
  std::optional<ExceptionMatch> match;
  std::string reason;

  explicit operator bool() const { return match.has_value(); }
};

struct TheoremReport {
  TheoremId id = TheoremId::THM_1;
  std::size_t k = 0;
  std::vector<Hypothesis> hypotheses;
  ThresholdVerdict condition;
  bool condition_holds = false;
  std::optional<ExceptionMatch> exception;
  Conclusion conclusion = Conclusion::not_applicable;
  std::vector<std::string> notes;

  bool hypotheses_hold() const;
};

struct CheckConfig {
  CompareConfig compare;
  SpectralConfig spectral;
};

/// Membership in M1(n,k): k vertices X of degree k sharing a k-set Y as
/// neighbourhood, with Y u Z missing at most floor(k^2/4) edges. Candidate
/// X-sets beyond the degree fingerprint are searched up to C(2k,k).
Recognition recognize_M1(const Graph& g, std::size_t k);
Recognition recognize_L1(const Graph& g, std::size_t k);
Recognition recognize_B1(const Graph& g, std::size_t k);

/// Spanning-subgraph tests for the edge theorems; they assume
/// min_degree(g) >= k, which forces every X vertex to see all of Y.
Recognition subgraph_of_M(const Graph& g, std::size_t k);
Recognition subgraph_of_L(const Graph& g, std::size_t k);
Recognition subgraph_of_B(const Graph& g, std::size_t k);

TheoremReport check_thm1(const Graph& g, std::size_t k, const CheckConfig& cfg = {});
TheoremReport check_thm2(const Graph& g, std::size_t k, const CheckConfig& cfg = {});
TheoremReport check_nikiforov(const Graph& g, std::size_t k, const CheckConfig& cfg = {});
TheoremReport check_li_ning(const Graph& g, std::size_t k, MatrixKind variant, const CheckConfig& cfg = {});
TheoremReport check_edge_theorem(const Graph& g, std::size_t k);
TheoremReport check_edge_theorem_bip(const Graph& g, std::size_t k);

TheoremReport check_theorem(TheoremId id, const Graph& g, std::size_t k, const CheckConfig& cfg = {});

std::size_t thm1_threshold(std::size_t k);         // k^4+k^3+4k^2+k+6
std::size_t thm2_threshold(std::size_t k);         // k^4+3k^3+5k^2+5k+4
std::size_t nikiforov_threshold(std::size_t k);    // k^3+k+4
std::size_t li_ning_threshold(std::size_t k);      // (k+1)^2

/// Memoized spectral radii of the reference graphs, keyed by
/// (family, k, n, matrix, tol). Safe for concurrent readers; when
/// SPECTRALHAM_CACHE_DIR is set, entries are also persisted there.
class ReferenceSpectra {
 public:
  static ReferenceSpectra& instance();

  EigenEstimate get(FamilyBase base, std::size_t k, std::size_t n, MatrixKind kind, double tol);
  void clear();
  /// Estimates computed in this process (disk hits excluded).
  std::size_t computed() const { return computed_.load(); }

 private:
  using Key = std::tuple<int, std::size_t, std::size_t, int, double>;
  std::shared_mutex mu_;
  std::map<Key, EigenEstimate> entries_;
  std::atomic<std::size_t> computed_{0};

  std::optional<std::filesystem::path> file_for(const Key& key) const;
};

enum class PropOutcome { holds, fails, inconclusive };
const char* to_string(PropOutcome o);

struct PropositionCheck {
  std::string id;  ///< e.g. "3.2", "4.1.8"
  PropOutcome outcome = PropOutcome::inconclusive;
  std::string statement;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  bool vacuous = false;
  std::string detail;
};

class UnconvergedEigenvector : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numeric check of the eigenvector propositions on a member of M2, L2 or B2.
/// The statements concern the q-maximizing member; other members may fail them.
/// Strict inequalities need margin > slack, non-strict ones hold within
/// slack, where slack = max(10 * interval width, tol).
std::vector<PropositionCheck> eigvec_structure_report(const FamilyMember& member, const CheckConfig& cfg = {});

nlohmann::json to_json(const ThresholdVerdict& v);
nlohmann::json to_json(const TheoremReport& r);
nlohmann::json to_json(const PropositionCheck& p);

}  // namespace spectralham
