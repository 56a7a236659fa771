#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "spectralham/graph.hpp"

namespace spectralham {

enum class FamilyBase { M, L, B };
enum class FamilyKind { intact, F1, F2, variant };

/// Deletion families that can be enumerated.
enum class FamilyTag { M1, M2, L1, L2, B1, B2 };

const char* to_string(FamilyBase b);
const char* to_string(FamilyTag t);
FamilyTag parse_family_tag(std::string_view text);
FamilyBase base_of(FamilyTag t);
FamilyKind kind_of(FamilyTag t);

/// X, Y, Z (and W for the bipartite family), with the degree-based
/// refinements of a specific member. For L, Y1 holds y when d(y) = n-1.
struct VertexClassification {
  VertexSet X, Y, Z, W;
  VertexSet Y1, Y2, Z1, Z2, W1, W2;
};

struct FamilyMember {
  Graph graph;
  FamilyBase base = FamilyBase::M;
  FamilyKind kind = FamilyKind::intact;
  std::size_t k = 0;
  std::size_t n = 0;
  std::vector<Edge> deleted;
  std::vector<Edge> added;
  VertexClassification classes;

  /// "M", "M1", "M2", "M'", ... as used in reports.
  std::string tag() const;
  /// Deleted and added edges written with class-local names, e.g. "Y0-Z1 Z0-Z2".
  std::string describe() const;
  /// Total order used to sort members deterministically.
  std::string key() const;
};

class FamilyParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// M_k(n) = K_k v (K_{n-2k} + complement K_k). Labels: Y = 0..k-1,
/// Z = k..n-k-1, X = n-k..n-1.
FamilyMember make_M(std::size_t k, std::size_t n);
/// L_k(n) = K_1 v (K_{n-k-1} + K_k). Labels: Y = {0}, Z = 1..n-k-1, X = n-k..n-1.
FamilyMember make_L(std::size_t k, std::size_t n);
/// K_{n,n} minus a K_{k,n-k}. S = X u Z with X = 0..k-1, Z = k..n-1;
/// T = Y u W with Y = n..n+k-1, W = n+k..2n-1.
FamilyMember make_B(std::size_t k, std::size_t n);
/// M_k(n) plus the edge X0-X1, minus the vertex-disjoint edges Z0-Z1, Z2-Z3.
FamilyMember make_M_prime(std::size_t k, std::size_t n);
/// B_k(n) plus the edge X0-X1, minus the vertex-disjoint edges Z0-W0, Z1-W1.
/// The added edge lies inside S, so the result carries no bipartition.
FamilyMember make_B_prime(std::size_t k, std::size_t n);

FamilyMember make_intact(FamilyBase base, std::size_t k, std::size_t n);

/// Edges a deletion family may remove: inside Y u Z for M and L, the
/// Z-Y and Z-W edges for B. Throws on a member with deletions or additions.
std::vector<Edge> e1_edges(const FamilyMember& intact);

struct DeletionBudget {
  std::size_t min = 0;
  std::size_t max = 0;
};
DeletionBudget deletion_budget(FamilyTag tag, std::size_t k);

/// Member of `tag` obtained by deleting `removed` from the intact graph;
/// validates E' against E1 and the size rule.
FamilyMember make_member(FamilyTag tag, std::size_t k, std::size_t n, std::vector<Edge> removed);

/// Recomputes the refinements from the member's current degrees.
void refine_classification(FamilyMember& m);

enum class EnumerationMode { orbit, exhaustive, sample };

const char* to_string(EnumerationMode m);
EnumerationMode parse_enumeration_mode(std::string_view text);

struct EnumerationSpec {
  FamilyTag tag = FamilyTag::M1;
  std::size_t k = 2;
  std::size_t n = 0;
  EnumerationMode mode = EnumerationMode::orbit;
  std::size_t samples = 100;
  std::uint64_t seed = 1;
  std::size_t exhaustive_cap = 1'000'000;
};

class EnumerationCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Pull-based, restartable stream of family members.
///
/// Orbit mode yields one member per orbit of deleted-edge configurations
/// under the symmetric groups acting on the classes: configurations are
/// grown edge by edge as class-coloured pattern graphs, deduplicated by
/// canonical form, and realized on the lowest labels of each class.
class FamilyEnumerator {
 public:
  explicit FamilyEnumerator(EnumerationSpec spec);
  ~FamilyEnumerator();
  FamilyEnumerator(FamilyEnumerator&&) noexcept;
  FamilyEnumerator& operator=(FamilyEnumerator&&) noexcept;

  std::optional<FamilyMember> next();
  void reset();
  const EnumerationSpec& spec() const { return spec_; }

 private:
  struct State;
  EnumerationSpec spec_;
  std::unique_ptr<State> state_;
};

std::vector<FamilyMember> enumerate_family(const EnumerationSpec& spec);

/// Uniform integer in [0, bound) by rejection sampling.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

/// Sidecar record {family_tag, k, n, deleted, added, classification}.
nlohmann::json to_json(const FamilyMember& m);

}  // namespace spectralham
