#include "spectralham/hamilton.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>
#include <numeric>

namespace spectralham {

const char* to_string(HamStatus s) {
  switch (s) {
    case HamStatus::hamiltonian: return "hamiltonian";
    case HamStatus::non_hamiltonian: return "non_hamiltonian";
    case HamStatus::undecided: return "undecided";
  }
  return "?";
}

const char* to_string(HamMethod m) {
  switch (m) {
    case HamMethod::none: return "none";
    case HamMethod::exact_dp: return "exact_dp";
    case HamMethod::closure: return "closure";
    case HamMethod::cut_search: return "cut_search";
  }
  return "?";
}

CycleCheck verify_cycle(const Graph& g, std::span<const Vertex> cycle) {
  const std::size_t n = g.order();
  if (n < 3) return {false, "graphs with fewer than 3 vertices have no cycle"};
  if (cycle.size() != n) {
    return {false, "cycle has " + std::to_string(cycle.size()) + " vertices, graph has " + std::to_string(n)};
  }
  std::vector<bool> seen(n, false);
  for (Vertex v : cycle) {
    if (v >= n) return {false, "vertex " + std::to_string(v) + " out of range"};
    if (seen[v]) return {false, "vertex " + std::to_string(v) + " repeated"};
    seen[v] = true;
  }
  for (std::size_t i = 0; i < n; ++i) {
    Vertex a = cycle[i];
    Vertex b = cycle[(i + 1) % n];
    if (!g.adjacent(a, b)) return {false, std::to_string(a) + "-" + std::to_string(b) + " is not an edge"};
  }
  return {true, {}};
}

bool verify_cut(const Graph& g, const CutCertificate& cut) {
  for (Vertex v : cut.cut)
    if (v >= g.order()) return false;
  if (!std::is_sorted(cut.cut.begin(), cut.cut.end()) ||
      std::adjacent_find(cut.cut.begin(), cut.cut.end()) != cut.cut.end()) {
    return false;
  }
  const std::size_t c = components_without(g, cut.cut);
  if (c != cut.components) return false;
  return cut.cut.empty() ? c >= 2 : c > cut.cut.size();
}

HamVerdict exact_hamiltonian(const Graph& g, std::size_t cap, const Deadline& deadline) {
  const std::size_t n = g.order();
  if (n > cap) {
    throw OrderTooLarge("exact Hamiltonicity capped at " + std::to_string(cap) + " vertices, got " +
                        std::to_string(n));
  }
  if (n > 31) throw OrderTooLarge("exact Hamiltonicity supports at most 31 vertices");
  HamVerdict out;
  out.method = HamMethod::exact_dp;
  if (n < 3) {
    out.status = HamStatus::non_hamiltonian;
    out.detail = "fewer than 3 vertices";
    return out;
  }
  // Vertices 1..n-1 map to bits 0..n-2; paths start at vertex 0.
  const std::size_t m = n - 1;
  std::vector<std::uint32_t> adj(n, 0);
  for (Vertex v = 1; v < n; ++v)
    for (Vertex u = 1; u < n; ++u)
      if (g.adjacent(u, v)) adj[v] |= std::uint32_t{1} << (u - 1);
  std::uint32_t start = 0;
  for (Vertex u = 1; u < n; ++u)
    if (g.adjacent(0, u)) start |= std::uint32_t{1} << (u - 1);

  // reach[mask]: endpoints e (bits) such that a path 0 -> ... -> e covers exactly mask.
  std::vector<std::uint32_t> reach(std::size_t{1} << m, 0);
  for (std::size_t b = 0; b < m; ++b)
    if (start >> b & 1) reach[std::size_t{1} << b] |= std::uint32_t{1} << b;
  for (std::size_t mask = 1; mask < reach.size(); ++mask) {
    if ((mask & 0xffff) == 0) deadline.check("exact Hamiltonicity");
    std::uint32_t ends = reach[mask];
    while (ends) {
      const int e = std::countr_zero(ends);
      ends &= ends - 1;
      std::uint32_t ext = adj[e + 1] & ~static_cast<std::uint32_t>(mask);
      while (ext) {
        const int f = std::countr_zero(ext);
        ext &= ext - 1;
        reach[mask | (std::size_t{1} << f)] |= std::uint32_t{1} << f;
      }
    }
  }
  const std::size_t full = reach.size() - 1;
  const std::uint32_t closing = reach[full] & start;
  if (closing == 0) {
    out.status = HamStatus::non_hamiltonian;
    out.detail = "no Hamiltonian cycle after exhaustive search";
    return out;
  }
  std::vector<Vertex> cycle;
  std::size_t mask = full;
  int e = std::countr_zero(closing);
  while (true) {
    cycle.push_back(static_cast<Vertex>(e + 1));
    const std::size_t prev = mask & ~(std::size_t{1} << e);
    if (prev == 0) break;
    const std::uint32_t cand = reach[prev] & adj[e + 1];
    e = std::countr_zero(cand);
    mask = prev;
  }
  cycle.push_back(0);
  std::reverse(cycle.begin(), cycle.end());
  out.status = HamStatus::hamiltonian;
  out.cycle = std::move(cycle);
  return out;
}

Closure bondy_chvatal_closure(const Graph& g, ClosureOrder order) {
  const std::size_t n = g.order();
  std::vector<Bitset> adj(n);
  std::vector<std::size_t> deg(n);
  for (Vertex v = 0; v < n; ++v) {
    adj[v] = g.neighbors(v);
    deg[v] = g.degree(v);
  }
  Closure out;
  std::deque<Edge> queue;
  auto qualifies = [&](Vertex u, Vertex v) { return u != v && !adj[u].test(v) && deg[u] + deg[v] >= n; };
  std::vector<Edge> initial;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (qualifies(u, v)) initial.push_back({u, v});
  if (order == ClosureOrder::descending) std::reverse(initial.begin(), initial.end());
  queue.assign(initial.begin(), initial.end());
  while (!queue.empty()) {
    const Edge e = queue.front();
    queue.pop_front();
    if (!qualifies(e.u, e.v)) continue;
    adj[e.u].set(e.v);
    adj[e.v].set(e.u);
    ++deg[e.u];
    ++deg[e.v];
    out.trace.push_back(e);
    for (Vertex end : {e.u, e.v}) {
      for (Vertex w = 0; w < n; ++w)
        if (qualifies(end, w)) queue.push_back(make_edge(end, w));
    }
  }
  std::vector<Edge> edges = g.edges();
  edges.insert(edges.end(), out.trace.begin(), out.trace.end());
  out.graph = Graph::make(n, edges);
  return out;
}

HamVerdict closure_certify(const Graph& g) {
  const std::size_t n = g.order();
  HamVerdict out;
  out.method = HamMethod::closure;
  if (n < 3) {
    out.detail = "fewer than 3 vertices";
    return out;
  }
  Closure cl = bondy_chvatal_closure(g);
  if (cl.graph.size() != n * (n - 1) / 2) {
    out.detail = "closure has " + std::to_string(cl.graph.size()) + " of " + std::to_string(n * (n - 1) / 2) +
                 " edges";
    return out;
  }
  // added_at[u*n+v]: position in the trace, or npos for original edges.
  constexpr std::size_t kNever = static_cast<std::size_t>(-1);
  std::vector<std::size_t> added_at(n * n, kNever);
  for (std::size_t i = 0; i < cl.trace.size(); ++i) {
    const Edge& e = cl.trace[i];
    added_at[e.u * n + e.v] = added_at[e.v * n + e.u] = i;
  }
  // Adjacent in G plus the first `upto` trace edges.
  auto adjacent_before = [&](Vertex a, Vertex b, std::size_t upto) {
    return g.adjacent(a, b) || added_at[a * n + b] < upto;
  };

  std::vector<Vertex> cycle(n);
  std::iota(cycle.begin(), cycle.end(), Vertex{0});
  std::vector<std::size_t> pos(n);
  for (std::size_t i = cl.trace.size(); i-- > 0;) {
    const Vertex u = cl.trace[i].u;
    const Vertex v = cl.trace[i].v;
    for (std::size_t j = 0; j < n; ++j) pos[cycle[j]] = j;
    const std::size_t pu = pos[u];
    const std::size_t pv = pos[v];
    const bool v_after_u = (pu + 1) % n == pv;
    const bool u_after_v = (pv + 1) % n == pu;
    if (!v_after_u && !u_after_v) continue;
    // Walk c_0 = u, c_1, ..., c_{n-1} = v around the cycle avoiding the edge uv.
    std::vector<Vertex> path(n);
    for (std::size_t j = 0; j < n; ++j) {
      path[j] = u_after_v ? cycle[(pu + j) % n] : cycle[(pu + n - j) % n];
    }
    std::size_t pivot = n;
    for (std::size_t j = 1; j + 1 < n; ++j) {
      if (adjacent_before(u, path[j + 1], i) && adjacent_before(v, path[j], i)) {
        pivot = j;
        break;
      }
    }
    if (pivot == n) {
      out.detail = "closure lifting failed at trace step " + std::to_string(i);
      return out;
    }
    std::vector<Vertex> next;
    next.reserve(n);
    next.push_back(u);
    for (std::size_t j = pivot + 1; j < n; ++j) next.push_back(path[j]);
    for (std::size_t j = pivot; j >= 1; --j) next.push_back(path[j]);
    cycle = std::move(next);
  }
  if (!verify_cycle(g, cycle)) {
    out.detail = "lifted cycle failed verification";
    return out;
  }
  out.status = HamStatus::hamiltonian;
  out.cycle = std::move(cycle);
  out.detail = "closure complete after " + std::to_string(cl.trace.size()) + " additions";
  return out;
}

namespace {

std::vector<Vertex> articulation_points(const Graph& g) {
  const std::size_t n = g.order();
  std::vector<std::size_t> disc(n, 0), low(n, 0);
  std::vector<bool> is_cut(n, false);
  std::size_t timer = 0;
  const auto lists = [&] {
    std::vector<VertexSet> l(n);
    for (Vertex v = 0; v < n; ++v) l[v] = g.neighbor_list(v);
    return l;
  }();
  struct Frame {
    Vertex v;
    Vertex parent;
    std::size_t next;
    std::size_t children;
  };
  constexpr Vertex kNone = static_cast<Vertex>(-1);
  for (Vertex root = 0; root < n; ++root) {
    if (disc[root]) continue;
    std::vector<Frame> stack{{root, kNone, 0, 0}};
    disc[root] = low[root] = ++timer;
    while (!stack.empty()) {
      Frame& f = stack.back();
      if (f.next < lists[f.v].size()) {
        const Vertex w = lists[f.v][f.next++];
        if (w == f.parent) continue;
        if (disc[w]) {
          low[f.v] = std::min(low[f.v], disc[w]);
        } else {
          ++f.children;
          disc[w] = low[w] = ++timer;
          stack.push_back({w, f.v, 0, 0});
        }
        continue;
      }
      const Frame done = f;
      stack.pop_back();
      if (stack.empty()) {
        if (done.children >= 2) is_cut[done.v] = true;
        continue;
      }
      Frame& parent = stack.back();
      low[parent.v] = std::min(low[parent.v], low[done.v]);
      if (parent.parent != kNone && low[done.v] >= disc[parent.v]) is_cut[parent.v] = true;
    }
  }
  std::vector<Vertex> out;
  for (Vertex v = 0; v < n; ++v)
    if (is_cut[v]) out.push_back(v);
  return out;
}

std::optional<CutCertificate> try_cut(const Graph& g, VertexSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  if (s.size() >= g.order()) return std::nullopt;
  const std::size_t c = components_without(g, s);
  if (s.empty() ? c >= 2 : c > s.size()) return CutCertificate{std::move(s), c};
  return std::nullopt;
}

HamVerdict cut_verdict(CutCertificate cut, std::string detail) {
  HamVerdict v;
  v.status = HamStatus::non_hamiltonian;
  v.method = HamMethod::cut_search;
  v.cut = std::move(cut);
  v.detail = std::move(detail);
  return v;
}

}  // namespace

HamVerdict violating_cut(const Graph& g, const CutSearchConfig& cfg) {
  const std::size_t n = g.order();
  HamVerdict none;
  none.method = HamMethod::cut_search;
  if (n < 3) {
    none.detail = "fewer than 3 vertices";
    return none;
  }
  if (auto c = try_cut(g, {})) return cut_verdict(*c, "graph is disconnected");
  for (Vertex a : articulation_points(g)) {
    if (auto c = try_cut(g, {a})) return cut_verdict(*c, "articulation point");
  }
  std::vector<Vertex> by_degree(n);
  std::iota(by_degree.begin(), by_degree.end(), Vertex{0});
  std::stable_sort(by_degree.begin(), by_degree.end(),
                   [&](Vertex a, Vertex b) { return g.degree(a) < g.degree(b); });
  for (Vertex v : by_degree) {
    if (2 * g.degree(v) >= n) break;
    if (auto c = try_cut(g, g.neighbor_list(v))) return cut_verdict(*c, "neighbourhood of a low-degree vertex");
  }
  if (auto sides = two_coloring(g)) {
    VertexSet s, t;
    for (Vertex v = 0; v < n; ++v) ((*sides)[v] == Side::S ? s : t).push_back(v);
    if (s.size() != t.size()) {
      if (auto c = try_cut(g, s.size() < t.size() ? s : t)) {
        return cut_verdict(*c, "smaller side of an unbalanced bipartition");
      }
    }
  }
  std::size_t examined = 0;
  for (std::size_t size = 1; size <= std::min(cfg.max_cut_size, n - 1); ++size) {
    std::size_t count = 1;
    for (std::size_t i = 1; i <= size && count <= cfg.combination_budget; ++i) count = count * (n - size + i) / i;
    if (examined + count > cfg.combination_budget) {
      none.detail = "no cut of size < " + std::to_string(size) + "; larger subsets exceed the search budget";
      return none;
    }
    examined += count;
    std::vector<Vertex> pick(size);
    std::iota(pick.begin(), pick.end(), Vertex{0});
    while (true) {
      if (auto c = try_cut(g, pick)) return cut_verdict(*c, "exhaustive subset search");
      std::size_t i = size;
      while (i > 0 && pick[i - 1] == n - size + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  none.detail = "no cut of size <= " + std::to_string(cfg.max_cut_size);
  return none;
}

HamVerdict decide(const Graph& g, const DecideConfig& cfg) {
  if (g.order() < 3) {
    HamVerdict v;
    v.status = HamStatus::non_hamiltonian;
    v.method = HamMethod::exact_dp;
    v.detail = "fewer than 3 vertices";
    return v;
  }
  HamVerdict cut = violating_cut(g, cfg.cut);
  if (cut.status != HamStatus::undecided) return cut;
  HamVerdict closure = closure_certify(g);
  if (closure.status != HamStatus::undecided) return closure;
  if (g.order() <= cfg.exact_cap) {
    try {
      return exact_hamiltonian(g, cfg.exact_cap, cfg.deadline);
    } catch (const TimeBudgetExceeded& e) {
      closure.detail += std::string("; ") + e.what();
    }
  }
  HamVerdict out;
  out.detail = cut.detail + "; " + closure.detail;
  return out;
}

}  // namespace spectralham
