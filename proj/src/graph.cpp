#include "spectralham/graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <sstream>

namespace spectralham {

namespace {

std::string pair_str(Vertex a, Vertex b) {
  std::ostringstream os;
  os << "(" << a << "," << b << ")";
  return os.str();
}

Graph from_adjacency(std::vector<Bitset> adj,
                     std::optional<std::vector<Side>> sides) {
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < adj.size(); ++u) {
    for (auto v = adj[u].find_next(u); v != Bitset::npos; v = adj[u].find_next(v)) {
      edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
    }
  }
  return Graph::make(adj.size(), edges, std::move(sides));
}

}  // namespace

Graph Graph::make(std::size_t n, std::span<const Edge> edges,
                  std::optional<std::vector<Side>> sides) {
  Graph g;
  g.adj_.assign(n, Bitset(n));
  g.degrees_.assign(n, 0);
  for (const Edge& e : edges) {
    if (e.u >= n || e.v >= n) {
      throw GraphError(GraphErrc::endpoint_out_of_range,
                       "edge " + pair_str(e.u, e.v) + " has an endpoint outside 0.." +
                           std::to_string(n == 0 ? 0 : n - 1));
    }
    if (e.u == e.v) {
      throw GraphError(GraphErrc::self_loop, "self-loop at vertex " + std::to_string(e.u));
    }
    if (g.adj_[e.u].test(e.v)) {
      throw GraphError(GraphErrc::duplicate_edge, "duplicate edge " + pair_str(e.u, e.v));
    }
    g.adj_[e.u].set(e.v);
    g.adj_[e.v].set(e.u);
    ++g.degrees_[e.u];
    ++g.degrees_[e.v];
    ++g.edge_count_;
  }
  g.sides_ = std::move(sides);
  g.validate_bipartition();
  return g;
}

void Graph::validate_bipartition() const {
  if (!sides_) return;
  if (sides_->size() != order()) {
    throw GraphError(GraphErrc::invalid_bipartition,
                     "bipartition labels " + std::to_string(sides_->size()) +
                         " vertices, graph has " + std::to_string(order()));
  }
  for (std::size_t u = 0; u < order(); ++u) {
    for (auto v = adj_[u].find_next(u); v != Bitset::npos; v = adj_[u].find_next(v)) {
      if ((*sides_)[u] == (*sides_)[v]) {
        throw GraphError(GraphErrc::invalid_bipartition,
                         "edge " + pair_str(static_cast<Vertex>(u), static_cast<Vertex>(v)) +
                             " does not cross the bipartition");
      }
    }
  }
}

void Graph::check_vertex(Vertex v) const {
  if (v >= order()) {
    throw GraphError(GraphErrc::unknown_vertex, "unknown vertex " + std::to_string(v));
  }
}

std::size_t Graph::degree(Vertex v) const {
  check_vertex(v);
  return degrees_[v];
}

const Bitset& Graph::neighbors(Vertex v) const {
  check_vertex(v);
  return adj_[v];
}

VertexSet Graph::neighbor_list(Vertex v) const { return to_vertex_set(neighbors(v)); }

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (std::size_t u = 0; u < order(); ++u) {
    for (auto v = adj_[u].find_next(u); v != Bitset::npos; v = adj_[u].find_next(v)) {
      out.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
    }
  }
  return out;
}

std::size_t Graph::side_count(Side s) const {
  if (!sides_) return 0;
  return static_cast<std::size_t>(std::count(sides_->begin(), sides_->end(), s));
}

Graph Graph::with_bipartition(std::optional<std::vector<Side>> sides) const {
  Graph g = *this;
  g.sides_ = std::move(sides);
  g.validate_bipartition();
  return g;
}

bool Graph::operator==(const Graph& other) const {
  return adj_ == other.adj_ && sides_ == other.sides_;
}

Graph make_graph(std::size_t n, std::span<const Edge> edges) {
  return Graph::make(n, edges);
}

Graph complete(std::size_t n) {
  if (n == 0) throw GraphError(GraphErrc::invalid_size, "complete graph needs n >= 1");
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) edges.push_back({u, v});
  return Graph::make(n, edges);
}

Graph edgeless(std::size_t n) {
  if (n == 0) throw GraphError(GraphErrc::invalid_size, "edgeless graph needs n >= 1");
  return Graph::make(n, {});
}

Graph complete_bipartite(std::size_t a, std::size_t b) {
  if (a == 0 || b == 0) {
    throw GraphError(GraphErrc::invalid_size, "complete bipartite graph needs a, b >= 1");
  }
  std::vector<Edge> edges;
  for (Vertex u = 0; u < a; ++u)
    for (Vertex v = 0; v < b; ++v) edges.push_back({u, static_cast<Vertex>(a + v)});
  std::vector<Side> sides(a + b, Side::T);
  std::fill_n(sides.begin(), a, Side::S);
  return Graph::make(a + b, edges, std::move(sides));
}

Graph cycle_graph(std::size_t n) {
  if (n < 3) throw GraphError(GraphErrc::invalid_size, "cycle needs n >= 3");
  std::vector<Edge> edges;
  for (Vertex i = 0; i < n; ++i) edges.push_back(make_edge(i, static_cast<Vertex>((i + 1) % n)));
  return Graph::make(n, edges);
}

Graph path_graph(std::size_t n) {
  if (n == 0) throw GraphError(GraphErrc::invalid_size, "path needs n >= 1");
  std::vector<Edge> edges;
  for (Vertex i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
  return Graph::make(n, edges);
}

Graph petersen() {
  std::vector<Edge> edges;
  for (Vertex i = 0; i < 5; ++i) {
    edges.push_back(make_edge(i, (i + 1) % 5));
    edges.push_back(make_edge(i, i + 5));
    edges.push_back(make_edge(5 + i, 5 + (i + 2) % 5));
  }
  return Graph::make(10, edges);
}

Graph join(const Graph& g, const Graph& h) {
  const std::size_t ng = g.order();
  const std::size_t nh = h.order();
  std::vector<Edge> edges = g.edges();
  edges.reserve(g.size() + h.size() + ng * nh);
  for (const Edge& e : h.edges()) {
    edges.push_back({static_cast<Vertex>(e.u + ng), static_cast<Vertex>(e.v + ng)});
  }
  for (Vertex u = 0; u < ng; ++u)
    for (Vertex v = 0; v < nh; ++v) edges.push_back({u, static_cast<Vertex>(ng + v)});
  std::optional<std::vector<Side>> sides;
  if (g.size() == 0 && h.size() == 0) {
    std::vector<Side> s(ng + nh, Side::T);
    std::fill_n(s.begin(), ng, Side::S);
    sides = std::move(s);
  }
  return Graph::make(ng + nh, edges, std::move(sides));
}

Graph disjoint_union(const Graph& g, const Graph& h) {
  const std::size_t ng = g.order();
  std::vector<Edge> edges = g.edges();
  for (const Edge& e : h.edges()) {
    edges.push_back({static_cast<Vertex>(e.u + ng), static_cast<Vertex>(e.v + ng)});
  }
  std::optional<std::vector<Side>> sides;
  if (g.bipartition() && h.bipartition()) {
    std::vector<Side> s = *g.bipartition();
    s.insert(s.end(), h.bipartition()->begin(), h.bipartition()->end());
    sides = std::move(s);
  }
  return Graph::make(ng + h.order(), edges, std::move(sides));
}

Graph delete_edges(const Graph& g, std::span<const Edge> removed) {
  std::vector<Bitset> adj(g.order());
  for (Vertex v = 0; v < g.order(); ++v) adj[v] = g.neighbors(v);
  for (const Edge& e : removed) {
    if (e.u >= g.order() || e.v >= g.order()) {
      throw GraphError(GraphErrc::endpoint_out_of_range,
                       "deleted pair " + pair_str(e.u, e.v) + " is out of range");
    }
    if (!adj[e.u].test(e.v)) {
      throw GraphError(GraphErrc::not_an_edge,
                       "cannot delete non-edge " + pair_str(e.u, e.v));
    }
    adj[e.u].reset(e.v);
    adj[e.v].reset(e.u);
  }
  return from_adjacency(std::move(adj), g.bipartition());
}

Graph add_edges(const Graph& g, std::span<const Edge> added) {
  std::vector<Bitset> adj(g.order());
  for (Vertex v = 0; v < g.order(); ++v) adj[v] = g.neighbors(v);
  std::optional<std::vector<Side>> sides = g.bipartition();
  for (const Edge& e : added) {
    if (e.u >= g.order() || e.v >= g.order()) {
      throw GraphError(GraphErrc::endpoint_out_of_range,
                       "added pair " + pair_str(e.u, e.v) + " is out of range");
    }
    if (e.u == e.v) {
      throw GraphError(GraphErrc::self_loop, "self-loop at vertex " + std::to_string(e.u));
    }
    if (adj[e.u].test(e.v)) {
      throw GraphError(GraphErrc::duplicate_edge, "edge " + pair_str(e.u, e.v) + " already present");
    }
    adj[e.u].set(e.v);
    adj[e.v].set(e.u);
    if (sides && (*sides)[e.u] == (*sides)[e.v]) sides.reset();
  }
  return from_adjacency(std::move(adj), std::move(sides));
}

Graph induced(const Graph& g, std::span<const Vertex> keep) {
  std::vector<std::int64_t> pos(g.order(), -1);
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] >= g.order()) {
      throw GraphError(GraphErrc::unknown_vertex, "unknown vertex " + std::to_string(keep[i]));
    }
    if (pos[keep[i]] >= 0) {
      throw GraphError(GraphErrc::unknown_vertex,
                       "vertex " + std::to_string(keep[i]) + " listed twice");
    }
    pos[keep[i]] = static_cast<std::int64_t>(i);
  }
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    if (pos[e.u] >= 0 && pos[e.v] >= 0) {
      edges.push_back(make_edge(static_cast<Vertex>(pos[e.u]), static_cast<Vertex>(pos[e.v])));
    }
  }
  std::optional<std::vector<Side>> sides;
  if (g.bipartition()) {
    std::vector<Side> s;
    for (Vertex v : keep) s.push_back((*g.bipartition())[v]);
    sides = std::move(s);
  }
  return Graph::make(keep.size(), edges, std::move(sides));
}

Graph remove_vertices(const Graph& g, std::span<const Vertex> removed) {
  Bitset gone = to_bitset(g.order(), removed);
  VertexSet keep;
  for (Vertex v = 0; v < g.order(); ++v)
    if (!gone.test(v)) keep.push_back(v);
  return induced(g, keep);
}

Graph relabel(const Graph& g, std::span<const Vertex> perm) {
  if (perm.size() != g.order()) {
    throw GraphError(GraphErrc::invalid_size, "relabelling must cover every vertex");
  }
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) edges.push_back(make_edge(perm[e.u], perm[e.v]));
  std::optional<std::vector<Side>> sides;
  if (g.bipartition()) {
    std::vector<Side> s(g.order());
    for (Vertex v = 0; v < g.order(); ++v) s[perm[v]] = (*g.bipartition())[v];
    sides = std::move(s);
  }
  return Graph::make(g.order(), edges, std::move(sides));
}

std::size_t min_degree(const Graph& g) {
  if (g.order() == 0) return 0;
  return *std::min_element(g.degrees().begin(), g.degrees().end());
}

std::size_t max_degree(const Graph& g) {
  if (g.order() == 0) return 0;
  return *std::max_element(g.degrees().begin(), g.degrees().end());
}

std::size_t degree(const Graph& g, Vertex v) { return g.degree(v); }

std::vector<std::size_t> degree_sequence(const Graph& g) {
  std::vector<std::size_t> d = g.degrees();
  std::sort(d.begin(), d.end(), std::greater<>());
  return d;
}

namespace {

std::vector<std::size_t> label_components(const Graph& g, const Bitset& gone,
                                          std::size_t& count) {
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> label(g.order(), kNone);
  count = 0;
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < g.order(); ++s) {
    if (gone.test(s) || label[s] != kNone) continue;
    label[s] = count;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex u = stack.back();
      stack.pop_back();
      const Bitset& nb = g.neighbors(u);
      for (auto v = nb.find_first(); v != Bitset::npos; v = nb.find_next(v)) {
        if (!gone.test(v) && label[v] == kNone) {
          label[v] = count;
          stack.push_back(static_cast<Vertex>(v));
        }
      }
    }
    ++count;
  }
  return label;
}

}  // namespace

std::vector<std::size_t> component_labels(const Graph& g) {
  std::size_t count = 0;
  return label_components(g, Bitset(g.order()), count);
}

std::size_t components(const Graph& g) {
  std::size_t count = 0;
  label_components(g, Bitset(g.order()), count);
  return count;
}

std::size_t components_without(const Graph& g, std::span<const Vertex> removed) {
  for (Vertex v : removed) {
    if (v >= g.order()) {
      throw GraphError(GraphErrc::unknown_vertex, "unknown vertex " + std::to_string(v));
    }
  }
  std::size_t count = 0;
  label_components(g, to_bitset(g.order(), removed), count);
  return count;
}

bool is_connected(const Graph& g) { return g.order() > 0 && components(g) == 1; }

std::optional<std::vector<Side>> two_coloring(const Graph& g) {
  std::vector<int> color(g.order(), -1);
  std::queue<Vertex> q;
  for (Vertex s = 0; s < g.order(); ++s) {
    if (color[s] >= 0) continue;
    color[s] = 0;
    q.push(s);
    while (!q.empty()) {
      Vertex u = q.front();
      q.pop();
      const Bitset& nb = g.neighbors(u);
      for (auto v = nb.find_first(); v != Bitset::npos; v = nb.find_next(v)) {
        if (color[v] < 0) {
          color[v] = 1 - color[u];
          q.push(static_cast<Vertex>(v));
        } else if (color[v] == color[u]) {
          return std::nullopt;
        }
      }
    }
  }
  std::vector<Side> sides(g.order());
  for (Vertex v = 0; v < g.order(); ++v) sides[v] = color[v] == 0 ? Side::S : Side::T;
  return sides;
}

std::optional<std::vector<Side>> balanced_bipartition(const Graph& g) {
  if (g.order() % 2 != 0) return std::nullopt;
  if (g.bipartition() && g.side_count(Side::S) * 2 == g.order()) return g.bipartition();
  auto base = two_coloring(g);
  if (!base) return std::nullopt;
  // Each component may be flipped; pick orientations so that |S| = n/2.
  std::size_t count = 0;
  auto label = label_components(g, Bitset(g.order()), count);
  std::vector<std::int64_t> s_count(count, 0), t_count(count, 0);
  for (Vertex v = 0; v < g.order(); ++v) {
    ((*base)[v] == Side::S ? s_count : t_count)[label[v]]++;
  }
  const std::size_t target = g.order() / 2;
  // reach[c][s]: can the first c components give exactly s vertices on S.
  std::vector<std::vector<char>> reach(count + 1, std::vector<char>(target + 1, 0));
  reach[0][0] = 1;
  for (std::size_t c = 0; c < count; ++c) {
    for (std::size_t s = 0; s <= target; ++s) {
      if (!reach[c][s]) continue;
      for (std::int64_t add : {s_count[c], t_count[c]}) {
        if (s + static_cast<std::size_t>(add) <= target) reach[c + 1][s + add] = 1;
      }
    }
  }
  if (!reach[count][target]) return std::nullopt;
  std::vector<char> flip(count, 0);
  std::size_t s = target;
  for (std::size_t c = count; c-- > 0;) {
    if (s >= static_cast<std::size_t>(s_count[c]) && reach[c][s - s_count[c]]) {
      s -= s_count[c];
    } else {
      flip[c] = 1;
      s -= t_count[c];
    }
  }
  std::vector<Side> sides = *base;
  for (Vertex v = 0; v < g.order(); ++v) {
    if (flip[label[v]]) sides[v] = sides[v] == Side::S ? Side::T : Side::S;
  }
  return sides;
}

std::size_t edges_within(const Graph& g, std::span<const Vertex> part) {
  Bitset b = to_bitset(g.order(), part);
  std::size_t twice = 0;
  for (Vertex v : part) twice += (g.neighbors(v) & b).count();
  return twice / 2;
}

Bitset to_bitset(std::size_t n, std::span<const Vertex> vs) {
  Bitset b(n);
  for (Vertex v : vs) b.set(v);
  return b;
}

VertexSet to_vertex_set(const Bitset& b) {
  VertexSet out;
  for (auto v = b.find_first(); v != Bitset::npos; v = b.find_next(v)) {
    out.push_back(static_cast<Vertex>(v));
  }
  return out;
}

}  // namespace spectralham
