#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "spectralham/graph.hpp"

namespace spectralham {

/// Isomorphism-invariant encoding: order, colour per canonical position,
/// then the upper triangle of the relabelled adjacency matrix.
struct CanonicalForm {
  std::size_t order = 0;
  std::vector<std::int64_t> colors;
  std::vector<std::uint64_t> bits;

  auto operator<=>(const CanonicalForm&) const = default;
};

struct CanonicalLabeling {
  /// position[i] is the vertex placed at canonical position i.
  std::vector<Vertex> position;
  CanonicalForm form;
  std::size_t leaves = 0;
};

class CanonLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Canonical labelling by equitable refinement and individualization,
/// keeping the greatest leaf. Branches skip vertices that are twins of an
/// already explored vertex in the same cell (their transposition is an
/// automorphism fixing the search path). `colors` may be empty.
CanonicalLabeling canonical_labeling(const Graph& g, std::span<const std::int64_t> colors = {},
                                     std::size_t leaf_limit = 1'000'000);

bool isomorphic(const Graph& a, const Graph& b);

/// mapping[v] = image in b of vertex v of a.
std::optional<std::vector<Vertex>> find_isomorphism(const Graph& a, const Graph& b);

}  // namespace spectralham
