#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spectralham/exact.hpp"
#include "spectralham/graph.hpp"

namespace spectralham {

enum class HamStatus { hamiltonian, non_hamiltonian, undecided };
enum class HamMethod { none, exact_dp, closure, cut_search };

const char* to_string(HamStatus s);
const char* to_string(HamMethod m);

/// Vertex set S whose removal leaves more than |S| components (or, for
/// S empty, a disconnected graph).
struct CutCertificate {
  VertexSet cut;
  std::size_t components = 0;
};

struct HamVerdict {
  HamStatus status = HamStatus::undecided;
  std::optional<std::vector<Vertex>> cycle;
  std::optional<CutCertificate> cut;
  HamMethod method = HamMethod::none;
  std::string detail;
};

struct CycleCheck {
  bool ok = false;
  std::string reason;
  explicit operator bool() const { return ok; }
};

/// True iff `cycle` lists every vertex once and consecutive vertices
/// (including last-first) are adjacent. Graphs with n < 3 have no cycle.
CycleCheck verify_cycle(const Graph& g, std::span<const Vertex> cycle);

/// Recounts components of G - S and checks the certificate inequality.
bool verify_cut(const Graph& g, const CutCertificate& cut);

class OrderTooLarge : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Subset dynamic programming over (visited set, endpoint) with paths
/// anchored at vertex 0. Throws OrderTooLarge above `cap`.
HamVerdict exact_hamiltonian(const Graph& g, std::size_t cap = 24, const Deadline& deadline = {});

enum class ClosureOrder { ascending, descending };

struct Closure {
  Graph graph;
  /// Added edges in the order they were added.
  std::vector<Edge> trace;
};

/// Repeatedly joins non-adjacent u, v with d(u) + d(v) >= n.
Closure bondy_chvatal_closure(const Graph& g, ClosureOrder order = ClosureOrder::ascending);

/// Hamiltonian cycle of G when its closure is complete, lifted back through
/// the closure trace in reverse; otherwise undecided.
HamVerdict closure_certify(const Graph& g);

struct CutSearchConfig {
  std::size_t max_cut_size = 4;
  /// Upper bound on subsets examined by the exhaustive phase; a size whose
  /// subsets would exceed it is skipped along with all larger sizes.
  std::size_t combination_budget = 200'000;
};

/// Looks for a cut certificate: disconnection, articulation points,
/// neighbourhoods of low-degree vertices, the smaller side of an unbalanced
/// bipartite graph, then all subsets up to max_cut_size.
HamVerdict violating_cut(const Graph& g, const CutSearchConfig& cfg = {});

struct DecideConfig {
  CutSearchConfig cut;
  std::size_t exact_cap = 24;
  Deadline deadline;
};

/// violating_cut, then closure_certify, then exact_hamiltonian within the cap.
HamVerdict decide(const Graph& g, const DecideConfig& cfg = {});

}  // namespace spectralham
