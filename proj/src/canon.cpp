#include "spectralham/canon.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace spectralham {

namespace {

using Cell = std::vector<Vertex>;
using Partition = std::vector<Cell>;

class Canonizer {
 public:
  Canonizer(const Graph& g, std::span<const std::int64_t> colors, std::size_t leaf_limit)
      : g_(g), colors_(colors), leaf_limit_(leaf_limit) {}

  CanonicalLabeling run() {
    const std::size_t n = g_.order();
    Partition cells;
    if (colors_.empty()) {
      Cell all(n);
      for (Vertex v = 0; v < n; ++v) all[v] = v;
      if (n > 0) cells.push_back(std::move(all));
    } else {
      std::map<std::int64_t, Cell> by_color;
      for (Vertex v = 0; v < n; ++v) by_color[colors_[v]].push_back(v);
      for (auto& [c, cell] : by_color) cells.push_back(std::move(cell));
    }
    std::deque<Cell> queue(cells.begin(), cells.end());
    refine(cells, queue);
    search(cells);
    best_.leaves = leaves_;
    return std::move(best_);
  }

 private:
  const Graph& g_;
  std::span<const std::int64_t> colors_;
  std::size_t leaf_limit_;
  std::size_t leaves_ = 0;
  bool have_best_ = false;
  CanonicalLabeling best_;

  void refine(Partition& cells, std::deque<Cell>& queue) const {
    const std::size_t n = g_.order();
    std::vector<std::size_t> count(n, 0);
    while (!queue.empty()) {
      Bitset splitter = to_bitset(n, queue.front());
      queue.pop_front();
      Partition next;
      next.reserve(cells.size());
      for (Cell& cell : cells) {
        if (cell.size() == 1) {
          next.push_back(std::move(cell));
          continue;
        }
        bool uniform = true;
        for (Vertex v : cell) {
          count[v] = (g_.neighbors(v) & splitter).count();
          if (count[v] != count[cell.front()]) uniform = false;
        }
        if (uniform) {
          next.push_back(std::move(cell));
          continue;
        }
        std::stable_sort(cell.begin(), cell.end(),
                         [&](Vertex a, Vertex b) { return count[a] < count[b]; });
        std::size_t start = 0;
        for (std::size_t i = 1; i <= cell.size(); ++i) {
          if (i == cell.size() || count[cell[i]] != count[cell[start]]) {
            Cell part(cell.begin() + static_cast<std::ptrdiff_t>(start),
                      cell.begin() + static_cast<std::ptrdiff_t>(i));
            queue.push_back(part);
            next.push_back(std::move(part));
            start = i;
          }
        }
      }
      cells = std::move(next);
    }
  }

  bool twins(Vertex a, Vertex b) const {
    Bitset diff = g_.neighbors(a) ^ g_.neighbors(b);
    diff.reset(a);
    diff.reset(b);
    return diff.none();
  }

  void leaf(const Partition& cells) {
    if (++leaves_ > leaf_limit_) {
      throw CanonLimitExceeded("canonical labelling exceeded " + std::to_string(leaf_limit_) +
                               " leaves");
    }
    const std::size_t n = g_.order();
    CanonicalLabeling cand;
    cand.position.reserve(n);
    for (const Cell& c : cells) cand.position.push_back(c.front());
    cand.form.order = n;
    cand.form.colors.reserve(n);
    for (Vertex v : cand.position) cand.form.colors.push_back(colors_.empty() ? 0 : colors_[v]);
    const std::size_t nbits = n * (n > 0 ? n - 1 : 0) / 2;
    cand.form.bits.assign((nbits + 63) / 64, 0);
    std::size_t bit = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const Bitset& row = g_.neighbors(cand.position[i]);
      for (std::size_t j = i + 1; j < n; ++j, ++bit) {
        if (row.test(cand.position[j])) cand.form.bits[bit / 64] |= (std::uint64_t{1} << (63 - bit % 64));
      }
    }
    if (!have_best_ || cand.form > best_.form) {
      best_ = std::move(cand);
      have_best_ = true;
    }
  }

  void search(const Partition& cells) {
    std::size_t target = cells.size();
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (cells[i].size() > 1 && (target == cells.size() || cells[i].size() < cells[target].size())) {
        target = i;
      }
    }
    if (target == cells.size()) {
      leaf(cells);
      return;
    }
    std::vector<Vertex> explored;
    for (Vertex v : cells[target]) {
      bool redundant = std::any_of(explored.begin(), explored.end(),
                                   [&](Vertex u) { return twins(u, v); });
      if (redundant) continue;
      explored.push_back(v);
      Partition child;
      child.reserve(cells.size() + 1);
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i != target) {
          child.push_back(cells[i]);
          continue;
        }
        child.push_back(Cell{v});
        Cell rest;
        for (Vertex u : cells[i])
          if (u != v) rest.push_back(u);
        child.push_back(std::move(rest));
      }
      std::deque<Cell> queue{Cell{v}};
      refine(child, queue);
      search(child);
    }
  }
};

}  // namespace

CanonicalLabeling canonical_labeling(const Graph& g, std::span<const std::int64_t> colors,
                                     std::size_t leaf_limit) {
  if (!colors.empty() && colors.size() != g.order()) {
    throw GraphError(GraphErrc::invalid_size, "colour vector must cover every vertex");
  }
  if (g.order() == 0) return {};
  return Canonizer(g, colors, leaf_limit).run();
}

bool isomorphic(const Graph& a, const Graph& b) { return find_isomorphism(a, b).has_value(); }

std::optional<std::vector<Vertex>> find_isomorphism(const Graph& a, const Graph& b) {
  if (a.order() != b.order() || a.size() != b.size()) return std::nullopt;
  if (degree_sequence(a) != degree_sequence(b)) return std::nullopt;
  CanonicalLabeling ca = canonical_labeling(a);
  CanonicalLabeling cb = canonical_labeling(b);
  if (ca.form != cb.form) return std::nullopt;
  std::vector<Vertex> mapping(a.order());
  for (std::size_t i = 0; i < a.order(); ++i) mapping[ca.position[i]] = cb.position[i];
  return mapping;
}

}  // namespace spectralham
