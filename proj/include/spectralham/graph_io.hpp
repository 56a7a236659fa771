#pragma once

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include "spectralham/graph.hpp"

namespace spectralham {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Edge-list text:
///
///     # comment
///     #bipartition s        (optional; S = {0..s-1})
///     n m
///     u v                   (m lines, 0-indexed)
std::string write_edge_list(const Graph& g);
Graph read_edge_list(std::istream& in);
Graph parse_edge_list(std::string_view text);

std::string write_graph6(const Graph& g);
Graph parse_graph6(std::string_view text);

/// Detects graph6 (optionally prefixed by ">>graph6<<") versus edge-list.
Graph parse_graph_text(std::string_view text);
Graph load_graph_file(const std::string& path);

}  // namespace spectralham
