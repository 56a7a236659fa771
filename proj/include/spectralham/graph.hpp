#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace spectralham {

using Vertex = std::uint32_t;
using VertexSet = std::vector<Vertex>;  // kept sorted
using Bitset = boost::dynamic_bitset<std::uint64_t>;

/// Unordered vertex pair, stored with u < v once normalized.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  auto operator<=>(const Edge&) const = default;
};

/// Normalizes the pair so that u < v. Does not reject u == v.
inline Edge make_edge(Vertex a, Vertex b) {
  return a < b ? Edge{a, b} : Edge{b, a};
}

enum class Side : std::uint8_t { S = 0, T = 1 };

enum class GraphErrc {
  endpoint_out_of_range,
  self_loop,
  duplicate_edge,
  not_an_edge,
  unknown_vertex,
  invalid_bipartition,
  invalid_size,
};

class GraphError : public std::invalid_argument {
 public:
  GraphError(GraphErrc code, const std::string& what)
      : std::invalid_argument(what), code_(code) {}

  GraphErrc code() const noexcept { return code_; }

 private:
  GraphErrc code_;
};

/// Immutable simple undirected graph on vertices 0..n-1.
///
/// Adjacency is stored as one bitset per vertex. An optional bipartition
/// labels every vertex S or T; when present every edge crosses it.
class Graph {
 public:
  Graph() = default;

  /// Validates and builds. Rejects out-of-range endpoints, self-loops and
  /// duplicate pairs (in either orientation).
  static Graph make(std::size_t n, std::span<const Edge> edges,
                    std::optional<std::vector<Side>> sides = std::nullopt);

  std::size_t order() const noexcept { return adj_.size(); }
  std::size_t size() const noexcept { return edge_count_; }

  bool adjacent(Vertex a, Vertex b) const { return adj_[a].test(b); }
  std::size_t degree(Vertex v) const;
  const Bitset& neighbors(Vertex v) const;
  VertexSet neighbor_list(Vertex v) const;
  const std::vector<std::size_t>& degrees() const noexcept { return degrees_; }

  /// Sorted list of edges with u < v.
  std::vector<Edge> edges() const;

  const std::optional<std::vector<Side>>& bipartition() const noexcept {
    return sides_;
  }
  std::size_t side_count(Side s) const;

  Graph with_bipartition(std::optional<std::vector<Side>> sides) const;

  bool operator==(const Graph& other) const;

 private:
  std::vector<Bitset> adj_;
  std::vector<std::size_t> degrees_;
  std::size_t edge_count_ = 0;
  std::optional<std::vector<Side>> sides_;

  void check_vertex(Vertex v) const;
  void validate_bipartition() const;
};

Graph make_graph(std::size_t n, std::span<const Edge> edges);

Graph complete(std::size_t n);
Graph edgeless(std::size_t n);
/// K_{a,b}; S = {0..a-1}, T = {a..a+b-1}.
Graph complete_bipartite(std::size_t a, std::size_t b);
Graph cycle_graph(std::size_t n);
Graph path_graph(std::size_t n);
Graph petersen();

/// G's vertices keep their labels, H's are shifted by order(G).
Graph join(const Graph& g, const Graph& h);
Graph disjoint_union(const Graph& g, const Graph& h);

/// Every pair must be an edge of g; deleting a non-edge is an error.
Graph delete_edges(const Graph& g, std::span<const Edge> removed);
/// Every pair must be a non-edge of g. Drops the bipartition if an added
/// edge does not cross it.
Graph add_edges(const Graph& g, std::span<const Edge> added);

/// Subgraph induced by `keep`, relabelled 0..|keep|-1 in the order given.
Graph induced(const Graph& g, std::span<const Vertex> keep);
/// Removes `removed` and relabels the rest in increasing order.
Graph remove_vertices(const Graph& g, std::span<const Vertex> removed);
/// result.adjacent(perm[u], perm[v]) == g.adjacent(u, v).
Graph relabel(const Graph& g, std::span<const Vertex> perm);

std::size_t min_degree(const Graph& g);
std::size_t max_degree(const Graph& g);
std::size_t degree(const Graph& g, Vertex v);
/// Degrees sorted in nonincreasing order.
std::vector<std::size_t> degree_sequence(const Graph& g);

/// Component id per vertex, numbered in order of smallest member.
std::vector<std::size_t> component_labels(const Graph& g);
std::size_t components(const Graph& g);
/// Number of components of g - removed.
std::size_t components_without(const Graph& g, std::span<const Vertex> removed);
bool is_connected(const Graph& g);

/// A proper 2-colouring, or nullopt if g has an odd cycle. Each component's
/// smallest vertex is placed on side S.
std::optional<std::vector<Side>> two_coloring(const Graph& g);

/// Bipartition with equal part sizes: the stored one if it is balanced,
/// otherwise a search over component orientations.
std::optional<std::vector<Side>> balanced_bipartition(const Graph& g);

/// Number of edges with both endpoints in `part`.
std::size_t edges_within(const Graph& g, std::span<const Vertex> part);

Bitset to_bitset(std::size_t n, std::span<const Vertex> vs);
VertexSet to_vertex_set(const Bitset& b);

}  // namespace spectralham
