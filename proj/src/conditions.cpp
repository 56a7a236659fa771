#include "spectralham/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <thread>

#include "spectralham/canon.hpp"

namespace spectralham {

const char* to_string(TheoremId id) {
  switch (id) {
    case TheoremId::THM_NI16: return "THM_NI16";
    case TheoremId::THM_1: return "THM_1";
    case TheoremId::THM_LN_ADJ: return "THM_LN_ADJ";
    case TheoremId::THM_LN_Q: return "THM_LN_Q";
    case TheoremId::THM_2: return "THM_2";
    case TheoremId::EDGE_THM: return "EDGE_THM";
    case TheoremId::EDGE_THM_BIP: return "EDGE_THM_BIP";
  }
  return "?";
}

TheoremId parse_theorem_id(std::string_view text) {
  for (TheoremId id : {TheoremId::THM_NI16, TheoremId::THM_1, TheoremId::THM_LN_ADJ, TheoremId::THM_LN_Q,
                       TheoremId::THM_2, TheoremId::EDGE_THM, TheoremId::EDGE_THM_BIP}) {
    if (text == to_string(id)) return id;
  }
  throw std::invalid_argument("unknown theorem '" + std::string(text) + "'");
}

const char* to_string(Conclusion c) {
  switch (c) {
    case Conclusion::hamiltonian_guaranteed: return "hamiltonian_guaranteed";
    case Conclusion::exception_member: return "exception_member";
    case Conclusion::not_applicable: return "not_applicable";
  }
  return "?";
}

const char* to_string(PropOutcome o) {
  switch (o) {
    case PropOutcome::holds: return "holds";
    case PropOutcome::fails: return "fails";
    case PropOutcome::inconclusive: return "inconclusive";
  }
  return "?";
}

bool TheoremReport::hypotheses_hold() const {
  return std::all_of(hypotheses.begin(), hypotheses.end(), [](const Hypothesis& h) { return h.holds; });
}

std::size_t thm1_threshold(std::size_t k) { return k * k * k * k + k * k * k + 4 * k * k + k + 6; }
std::size_t thm2_threshold(std::size_t k) { return k * k * k * k + 3 * k * k * k + 5 * k * k + 5 * k + 4; }
std::size_t nikiforov_threshold(std::size_t k) { return k * k * k + k + 4; }
std::size_t li_ning_threshold(std::size_t k) { return (k + 1) * (k + 1); }

namespace {

struct XYCandidate {
  VertexSet X;
  VertexSet Y;
};

std::size_t binomial(std::size_t n, std::size_t r) {
  if (r > n) return 0;
  std::size_t v = 1;
  for (std::size_t i = 1; i <= r; ++i) v = v * (n - r + i) / i;
  return v;
}

/// k-sets of degree-k vertices sharing one k-vertex neighbourhood.
std::vector<XYCandidate> xy_candidates(const Graph& g, std::size_t k, std::string& reason) {
  std::map<Bitset, VertexSet> groups;
  for (Vertex v = 0; v < g.order(); ++v)
    if (g.degree(v) == k) groups[g.neighbors(v)].push_back(v);
  std::vector<XYCandidate> out;
  const std::size_t bound = binomial(2 * k, k);
  std::size_t tried = 0;
  std::size_t degree_k = 0;
  for (const auto& [nb, members] : groups) {
    degree_k += members.size();
    if (members.size() < k) continue;
    VertexSet y = to_vertex_set(nb);
    if ((nb & to_bitset(g.order(), members)).any()) continue;
    if (members.size() == k) {
      out.push_back({members, y});
      continue;
    }
    std::vector<std::size_t> pick(k);
    std::iota(pick.begin(), pick.end(), std::size_t{0});
    while (true) {
      if (++tried > bound) {
        reason = "candidate X-set search exceeded C(2k,k) = " + std::to_string(bound);
        return out;
      }
      VertexSet x;
      for (std::size_t i : pick) x.push_back(members[i]);
      out.push_back({x, y});
      std::size_t i = k;
      while (i > 0 && pick[i - 1] == members.size() - k + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  if (out.empty()) {
    reason = degree_k == 0 ? "no vertices of degree " + std::to_string(k)
                           : "no " + std::to_string(k) + " degree-" + std::to_string(k) +
                                 " vertices share a neighbourhood of size " + std::to_string(k);
  }
  return out;
}

VertexSet complement_of(std::size_t n, std::initializer_list<const VertexSet*> parts) {
  std::vector<bool> used(n, false);
  for (const VertexSet* p : parts)
    for (Vertex v : *p) used[v] = true;
  VertexSet out;
  for (Vertex v = 0; v < n; ++v)
    if (!used[v]) out.push_back(v);
  return out;
}

std::vector<Vertex> mapping_from(std::size_t n, std::initializer_list<const VertexSet*> ordered) {
  std::vector<Vertex> map(n);
  Vertex next = 0;
  for (const VertexSet* p : ordered)
    for (Vertex v : *p) map[v] = next++;
  return map;
}

std::vector<Edge> missing_within(const Graph& g, const VertexSet& part) {
  std::vector<Edge> out;
  for (std::size_t i = 0; i < part.size(); ++i)
    for (std::size_t j = i + 1; j < part.size(); ++j)
      if (!g.adjacent(part[i], part[j])) out.push_back(make_edge(part[i], part[j]));
  return out;
}

std::vector<Edge> mapped(const std::vector<Edge>& es, const std::vector<Vertex>& map) {
  std::vector<Edge> out;
  for (const Edge& e : es) out.push_back(make_edge(map[e.u], map[e.v]));
  std::sort(out.begin(), out.end());
  return out;
}

/// Reconstruction check: relabelled g has exactly the member's edges.
bool same_edges(const Graph& g, const std::vector<Vertex>& map, const Graph& target) {
  return mapped(g.edges(), map) == target.edges();
}

bool subset_edges(const Graph& g, const std::vector<Vertex>& map, const Graph& target) {
  for (const Edge& e : g.edges())
    if (!target.adjacent(map[e.u], map[e.v])) return false;
  return true;
}

std::optional<std::vector<Side>> balanced_sides(const Graph& g) {
  if (g.order() % 2 != 0) return std::nullopt;
  return balanced_bipartition(g);
}

Recognition fail(std::string why) {
  Recognition r;
  r.reason = std::move(why);
  return r;
}

Recognition success(std::string family, FamilyMember member, std::vector<Vertex> map, std::string detail) {
  Recognition r;
  r.match = ExceptionMatch{std::move(family), std::move(member), std::move(map), std::move(detail)};
  r.reason = r.match->detail;
  return r;
}

}  // namespace

Recognition recognize_M1(const Graph& g, std::size_t k) {
  const std::size_t n = g.order();
  if (k < 2 || n < 2 * k + 1) return fail("parameters outside M_k(n)");
  std::string reason;
  auto cands = xy_candidates(g, k, reason);
  const std::size_t budget = deletion_budget(FamilyTag::M1, k).max;
  for (const auto& c : cands) {
    VertexSet z = complement_of(n, {&c.X, &c.Y});
    VertexSet yz = c.Y;
    yz.insert(yz.end(), z.begin(), z.end());
    std::sort(yz.begin(), yz.end());
    auto missing = missing_within(g, yz);
    if (missing.size() > budget) {
      reason = "Y u Z misses " + std::to_string(missing.size()) + " edges, exceeds deletion budget " +
               std::to_string(budget);
      continue;
    }
    auto map = mapping_from(n, {&c.Y, &z, &c.X});
    FamilyMember member = make_member(FamilyTag::M1, k, n, mapped(missing, map));
    if (!same_edges(g, map, member.graph)) continue;
    return success("M1", std::move(member), std::move(map),
                   "member of M1 with |E'| = " + std::to_string(missing.size()));
  }
  return fail(reason.empty() ? "no consistent X/Y split" : reason);
}

Recognition recognize_L1(const Graph& g, std::size_t k) {
  const std::size_t n = g.order();
  if (k < 1 || n < k + 2) return fail("parameters outside L_k(n)");
  const std::size_t budget = deletion_budget(FamilyTag::L1, k).max;
  std::string reason = "no vertex separates a K_" + std::to_string(k) + " from the rest";
  for (Vertex y = 0; y < n; ++y) {
    if (g.degree(y) < k) continue;
    Graph rest = remove_vertices(g, std::vector<Vertex>{y});
    auto labels = component_labels(rest);
    std::size_t count = rest.order() == 0 ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
    if (count != 2) continue;
    std::vector<VertexSet> parts(2);
    for (Vertex v = 0; v < rest.order(); ++v) parts[labels[v]].push_back(v < y ? v : v + 1);
    for (int which = 0; which < 2; ++which) {
      const VertexSet& x = parts[which];
      const VertexSet& z = parts[1 - which];
      if (x.size() != k) continue;
      if (!missing_within(g, x).empty()) continue;
      if (!std::all_of(x.begin(), x.end(), [&](Vertex v) { return g.adjacent(v, y); })) continue;
      VertexSet ys{y};
      VertexSet yz = z;
      yz.push_back(y);
      std::sort(yz.begin(), yz.end());
      auto missing = missing_within(g, yz);
      if (missing.size() > budget) {
        reason = "Y u Z misses " + std::to_string(missing.size()) + " edges, exceeds deletion budget " +
                 std::to_string(budget);
        continue;
      }
      auto map = mapping_from(n, {&ys, &z, &x});
      FamilyMember member = make_member(FamilyTag::L1, k, n, mapped(missing, map));
      if (!same_edges(g, map, member.graph)) continue;
      return success("L1", std::move(member), std::move(map),
                     "member of L1 with |E'| = " + std::to_string(missing.size()));
    }
  }
  return fail(reason);
}

Recognition recognize_B1(const Graph& g, std::size_t k) {
  if (k < 2) return fail("parameters outside B_k(n)");
  auto sides = balanced_sides(g);
  if (!sides) return fail("not balanced bipartite");
  const std::size_t n = g.order() / 2;
  if (n < 2 * k) return fail("parameters outside B_k(n)");
  std::string reason;
  auto cands = xy_candidates(g, k, reason);
  const std::size_t budget = deletion_budget(FamilyTag::B1, k).max;
  for (const auto& c : cands) {
    const Side xs = (*sides)[c.X.front()];
    VertexSet s, t;
    for (Vertex v = 0; v < g.order(); ++v) ((*sides)[v] == xs ? s : t).push_back(v);
    VertexSet z, w;
    std::set_difference(s.begin(), s.end(), c.X.begin(), c.X.end(), std::back_inserter(z));
    std::set_difference(t.begin(), t.end(), c.Y.begin(), c.Y.end(), std::back_inserter(w));
    if (z.size() != n - k || w.size() != n - k) continue;
    std::vector<Edge> missing;
    for (Vertex zv : z) {
      for (Vertex tv : t)
        if (!g.adjacent(zv, tv)) missing.push_back(make_edge(zv, tv));
    }
    if (missing.size() > budget) {
      reason = "Z-(Y u W) misses " + std::to_string(missing.size()) + " edges, exceeds deletion budget " +
               std::to_string(budget);
      continue;
    }
    auto map = mapping_from(g.order(), {&c.X, &z, &c.Y, &w});
    FamilyMember member = make_member(FamilyTag::B1, k, n, mapped(missing, map));
    if (!same_edges(g, map, member.graph)) continue;
    return success("B1", std::move(member), std::move(map),
                   "member of B1 with |E'| = " + std::to_string(missing.size()));
  }
  return fail(reason.empty() ? "no consistent X/Y split" : reason);
}

Recognition subgraph_of_M(const Graph& g, std::size_t k) {
  const std::size_t n = g.order();
  if (k < 2 || n < 2 * k + 1) return fail("M_k(n) undefined for these parameters");
  if (min_degree(g) < k) return fail("subgraph test assumes min degree >= k");
  std::string reason;
  for (const auto& c : xy_candidates(g, k, reason)) {
    VertexSet z = complement_of(n, {&c.X, &c.Y});
    auto map = mapping_from(n, {&c.Y, &z, &c.X});
    FamilyMember m = make_M(k, n);
    if (!subset_edges(g, map, m.graph)) continue;
    return success("subgraph of M", std::move(m), std::move(map), "spanning subgraph of M_k(n)");
  }
  return fail(reason.empty() ? "no X/Y split embeds into M_k(n)" : reason);
}

Recognition subgraph_of_L(const Graph& g, std::size_t k) {
  const std::size_t n = g.order();
  if (k < 1 || n < k + 2) return fail("L_k(n) undefined for these parameters");
  for (Vertex y = 0; y < n; ++y) {
    Graph rest = remove_vertices(g, std::vector<Vertex>{y});
    auto labels = component_labels(rest);
    const std::size_t count = *std::max_element(labels.begin(), labels.end()) + 1;
    if (count < 2) continue;
    std::vector<VertexSet> comps(count);
    for (Vertex v = 0; v < rest.order(); ++v) comps[labels[v]].push_back(v < y ? v : v + 1);
    // Subset sum over component sizes reaching exactly k.
    std::vector<std::vector<char>> reach(count + 1, std::vector<char>(k + 1, 0));
    reach[0][0] = 1;
    for (std::size_t i = 0; i < count; ++i) {
      for (std::size_t s = 0; s <= k; ++s) {
        if (!reach[i][s]) continue;
        reach[i + 1][s] = 1;
        if (s + comps[i].size() <= k) reach[i + 1][s + comps[i].size()] = 1;
      }
    }
    if (!reach[count][k]) continue;
    VertexSet x, z;
    std::size_t s = k;
    for (std::size_t i = count; i-- > 0;) {
      if (reach[i][s]) {
        z.insert(z.end(), comps[i].begin(), comps[i].end());
      } else {
        x.insert(x.end(), comps[i].begin(), comps[i].end());
        s -= comps[i].size();
      }
    }
    if (s != 0 || x.size() != k) continue;
    std::sort(x.begin(), x.end());
    std::sort(z.begin(), z.end());
    VertexSet ys{y};
    auto map = mapping_from(n, {&ys, &z, &x});
    FamilyMember m = make_L(k, n);
    if (!subset_edges(g, map, m.graph)) continue;
    return success("subgraph of L", std::move(m), std::move(map), "spanning subgraph of L_k(n)");
  }
  return fail("no vertex splits off components totalling " + std::to_string(k) + " vertices");
}

Recognition subgraph_of_B(const Graph& g, std::size_t k) {
  if (k < 2) return fail("B_k(n) undefined for these parameters");
  auto sides = balanced_sides(g);
  if (!sides) return fail("not balanced bipartite");
  const std::size_t n = g.order() / 2;
  if (n < 2 * k) return fail("B_k(n) undefined for these parameters");
  if (min_degree(g) < k) return fail("subgraph test assumes min degree >= k");
  std::string reason;
  for (const auto& c : xy_candidates(g, k, reason)) {
    const Side xs = (*sides)[c.X.front()];
    VertexSet s, t;
    for (Vertex v = 0; v < g.order(); ++v) ((*sides)[v] == xs ? s : t).push_back(v);
    VertexSet z, w;
    std::set_difference(s.begin(), s.end(), c.X.begin(), c.X.end(), std::back_inserter(z));
    std::set_difference(t.begin(), t.end(), c.Y.begin(), c.Y.end(), std::back_inserter(w));
    if (z.size() != n - k || w.size() != n - k) continue;
    auto map = mapping_from(g.order(), {&c.X, &z, &c.Y, &w});
    FamilyMember m = make_B(k, n);
    if (!subset_edges(g, map, m.graph)) continue;
    return success("subgraph of B", std::move(m), std::move(map), "spanning subgraph of B_k(n)");
  }
  return fail(reason.empty() ? "no X/Y split embeds into B_k(n)" : reason);
}

// ---------------------------------------------------------------------------

namespace {

Hypothesis hyp(std::string name, bool holds, std::string detail = {}) {
  return {std::move(name), holds, std::move(detail)};
}

Hypothesis min_degree_hyp(const Graph& g, std::size_t k, bool note_connectivity) {
  const std::size_t d = min_degree(g);
  std::string detail = "min degree " + std::to_string(d);
  if (note_connectivity && !is_connected(g)) detail += "; graph is disconnected (statement does not require connectivity)";
  return hyp("min degree >= k", d >= k, detail);
}

Hypothesis order_hyp(const char* name, std::size_t n, std::size_t threshold) {
  return hyp(name, n >= threshold, "n = " + std::to_string(n) + ", threshold " + std::to_string(threshold));
}

void conclude(TheoremReport& r) {
  if (r.hypotheses_hold() && r.condition_holds) {
    r.conclusion = r.exception ? Conclusion::exception_member : Conclusion::hamiltonian_guaranteed;
  } else {
    r.conclusion = Conclusion::not_applicable;
  }
}

void spectral_condition(TheoremReport& r, const Graph& g, MatrixKind kind, const Rational& t,
                        const CheckConfig& cfg) {
  r.condition = try_compare_threshold(g, kind, t, cfg.compare);
  r.condition_holds = r.condition.at_least();
  if (r.condition.relation == Relation::undecided) r.notes.push_back("condition undecided: " + r.condition.detail);
}

ThresholdVerdict count_verdict(std::size_t value, std::size_t threshold, const char* what) {
  ThresholdVerdict v;
  v.method = CompareMethod::exact_count;
  v.threshold = Rational(static_cast<std::int64_t>(threshold));
  v.threshold_value = static_cast<double>(threshold);
  v.relation = value > threshold ? Relation::greater : value == threshold ? Relation::equal : Relation::less;
  v.margin = std::fabs(static_cast<double>(value) - static_cast<double>(threshold));
  v.detail = std::string(what) + " = " + std::to_string(value);
  return v;
}

void attach(TheoremReport& r, Recognition rec, const std::string& family) {
  if (rec.match) {
    r.exception = std::move(rec.match);
  } else {
    r.notes.push_back(family + ": " + rec.reason);
  }
}

}  // namespace

TheoremReport check_thm1(const Graph& g, std::size_t k, const CheckConfig& cfg) {
  TheoremReport r;
  r.id = TheoremId::THM_1;
  r.k = k;
  const std::size_t n = g.order();
  r.hypotheses.push_back(hyp("k > 1", k > 1));
  r.hypotheses.push_back(order_hyp("n >= k^4+k^3+4k^2+k+6", n, thm1_threshold(k)));
  r.hypotheses.push_back(hyp("connected", is_connected(g)));
  r.hypotheses.push_back(min_degree_hyp(g, k, false));
  const std::int64_t t = 2 * (static_cast<std::int64_t>(n) - static_cast<std::int64_t>(k) - 1);
  spectral_condition(r, g, MatrixKind::signless_laplacian, Rational(t), cfg);
  if (k >= 2) {
    Recognition m1 = recognize_M1(g, k);
    if (m1) {
      r.exception = std::move(m1.match);
    } else {
      r.notes.push_back("M1: " + m1.reason);
      attach(r, recognize_L1(g, k), "L1");
    }
  }
  conclude(r);
  return r;
}

TheoremReport check_thm2(const Graph& g, std::size_t k, const CheckConfig& cfg) {
  TheoremReport r;
  r.id = TheoremId::THM_2;
  r.k = k;
  const std::size_t n = g.order() / 2;
  const bool balanced = balanced_sides(g).has_value();
  r.hypotheses.push_back(hyp("k > 1", k > 1));
  r.hypotheses.push_back(hyp("balanced bipartite", balanced,
                             balanced ? "order " + std::to_string(g.order())
                                      : two_coloring(g) ? "bipartite but unbalanced" : "contains an odd cycle"));
  r.hypotheses.push_back(order_hyp("n >= k^4+3k^3+5k^2+5k+4", n, thm2_threshold(k)));
  r.hypotheses.push_back(min_degree_hyp(g, k, false));
  // 2n - k with 2n = |V(G)|.
  const std::int64_t t = static_cast<std::int64_t>(g.order()) - static_cast<std::int64_t>(k);
  spectral_condition(r, g, MatrixKind::signless_laplacian, Rational(t), cfg);
  if (balanced) attach(r, recognize_B1(g, k), "B1");
  conclude(r);
  return r;
}

TheoremReport check_nikiforov(const Graph& g, std::size_t k, const CheckConfig& cfg) {
  TheoremReport r;
  r.id = TheoremId::THM_NI16;
  r.k = k;
  const std::size_t n = g.order();
  r.hypotheses.push_back(hyp("k > 1", k > 1));
  r.hypotheses.push_back(order_hyp("n >= k^3+k+4", n, nikiforov_threshold(k)));
  r.hypotheses.push_back(min_degree_hyp(g, k, true));
  const std::int64_t t = static_cast<std::int64_t>(n) - static_cast<std::int64_t>(k) - 1;
  spectral_condition(r, g, MatrixKind::adjacency, Rational(t), cfg);
  if (k >= 2 && n >= 2 * k + 1) {
    FamilyMember m = make_M(k, n);
    if (auto map = find_isomorphism(g, m.graph)) {
      r.exception = ExceptionMatch{"M", std::move(m), std::move(*map), "isomorphic to M_k(n)"};
    }
  }
  if (!r.exception && k >= 1 && n >= k + 2) {
    FamilyMember l = make_L(k, n);
    if (auto map = find_isomorphism(g, l.graph)) {
      r.exception = ExceptionMatch{"L", std::move(l), std::move(*map), "isomorphic to L_k(n)"};
    }
  }
  if (!r.exception) r.notes.push_back("not isomorphic to M_k(n) or L_k(n)");
  conclude(r);
  return r;
}

TheoremReport check_li_ning(const Graph& g, std::size_t k, MatrixKind variant, const CheckConfig& cfg) {
  TheoremReport r;
  r.id = variant == MatrixKind::adjacency ? TheoremId::THM_LN_ADJ : TheoremId::THM_LN_Q;
  r.k = k;
  const std::size_t n = g.order() / 2;
  const bool balanced = balanced_sides(g).has_value();
  r.hypotheses.push_back(hyp("k > 1", k > 1));
  r.hypotheses.push_back(hyp("balanced bipartite", balanced));
  r.hypotheses.push_back(order_hyp("n >= (k+1)^2", n, li_ning_threshold(k)));
  r.hypotheses.push_back(min_degree_hyp(g, k, false));
  if (k < 2 || n < 2 * k) {
    r.condition.relation = Relation::undecided;
    r.condition.detail = "reference B_k(n) undefined for these parameters";
    r.notes.push_back(r.condition.detail);
    conclude(r);
    return r;
  }
  FamilyMember b = make_B(k, n);
  std::optional<std::vector<Vertex>> iso = find_isomorphism(g, b.graph);
  if (iso) {
    r.condition.relation = Relation::equal;
    r.condition.method = CompareMethod::isomorphism;
    r.condition.detail = "isomorphic to B_k(n)";
    r.exception = ExceptionMatch{"B", b, std::move(*iso), "isomorphic to B_k(n)"};
  } else {
    for (double tol : {cfg.spectral.tol, 1e-12, 1e-14}) {
      SpectralConfig sc = cfg.spectral;
      sc.tol = tol;
      EigenEstimate ref = ReferenceSpectra::instance().get(FamilyBase::B, k, n, variant, tol);
      EigenEstimate est = extreme_eigen(g, variant, sc);
      r.condition = compare_estimates(est, ref);
      r.condition.threshold_value = ref.value;
      if (r.condition.relation != Relation::undecided) break;
    }
    r.notes.push_back("not isomorphic to B_k(n)");
  }
  r.condition_holds = r.condition.at_least();
  if (r.condition.relation == Relation::undecided) r.notes.push_back("comparison with B_k(n) undecidable");
  conclude(r);
  return r;
}

TheoremReport check_edge_theorem(const Graph& g, std::size_t k) {
  TheoremReport r;
  r.id = TheoremId::EDGE_THM;
  r.k = k;
  const std::size_t n = g.order();
  r.hypotheses.push_back(hyp("k >= 1", k >= 1));
  r.hypotheses.push_back(order_hyp("n >= 6k+5", n, 6 * k + 5));
  r.hypotheses.push_back(min_degree_hyp(g, k, false));
  const std::size_t m = n >= k + 1 ? n - k - 1 : 0;
  const std::size_t threshold = m * (m > 0 ? m - 1 : 0) / 2 + (k + 1) * (k + 1);
  r.condition = count_verdict(g.size(), threshold, "e(G)");
  r.condition_holds = r.condition.relation == Relation::greater;
  if (min_degree(g) >= k) {
    Recognition l = subgraph_of_L(g, k);
    if (l) {
      r.exception = std::move(l.match);
    } else {
      r.notes.push_back("L: " + l.reason);
      attach(r, subgraph_of_M(g, k), "M");
    }
  }
  conclude(r);
  return r;
}

TheoremReport check_edge_theorem_bip(const Graph& g, std::size_t k) {
  TheoremReport r;
  r.id = TheoremId::EDGE_THM_BIP;
  r.k = k;
  const std::size_t n = g.order() / 2;
  const bool balanced = balanced_sides(g).has_value();
  r.hypotheses.push_back(hyp("balanced bipartite", balanced));
  r.hypotheses.push_back(hyp("k >= 1", k >= 1));
  r.hypotheses.push_back(order_hyp("n >= 2k+1", n, 2 * k + 1));
  r.hypotheses.push_back(min_degree_hyp(g, k, false));
  const std::size_t threshold = n * (n >= k + 1 ? n - k - 1 : 0) + (k + 1) * (k + 1);
  r.condition = count_verdict(g.size(), threshold, "e(G)");
  r.condition_holds = r.condition.relation == Relation::greater;
  if (balanced && min_degree(g) >= k) attach(r, subgraph_of_B(g, k), "B");
  conclude(r);
  return r;
}

TheoremReport check_theorem(TheoremId id, const Graph& g, std::size_t k, const CheckConfig& cfg) {
  switch (id) {
    case TheoremId::THM_NI16: return check_nikiforov(g, k, cfg);
    case TheoremId::THM_1: return check_thm1(g, k, cfg);
    case TheoremId::THM_LN_ADJ: return check_li_ning(g, k, MatrixKind::adjacency, cfg);
    case TheoremId::THM_LN_Q: return check_li_ning(g, k, MatrixKind::signless_laplacian, cfg);
    case TheoremId::THM_2: return check_thm2(g, k, cfg);
    case TheoremId::EDGE_THM: return check_edge_theorem(g, k);
    case TheoremId::EDGE_THM_BIP: return check_edge_theorem_bip(g, k);
  }
  throw std::invalid_argument("unknown theorem");
}

// ---------------------------------------------------------------------------

ReferenceSpectra& ReferenceSpectra::instance() {
  static ReferenceSpectra cache;
  return cache;
}

void ReferenceSpectra::clear() {
  std::unique_lock lock(mu_);
  entries_.clear();
}

std::optional<std::filesystem::path> ReferenceSpectra::file_for(const Key& key) const {
  const char* dir = std::getenv("SPECTRALHAM_CACHE_DIR");
  if (!dir || !*dir) return std::nullopt;
  char tol[32];
  std::snprintf(tol, sizeof tol, "%.0e", std::get<4>(key));
  std::ostringstream name;
  name << to_string(static_cast<FamilyBase>(std::get<0>(key))) << "_k" << std::get<1>(key) << "_n"
       << std::get<2>(key) << "_" << to_string(static_cast<MatrixKind>(std::get<3>(key))) << "_" << tol
       << ".json";
  return std::filesystem::path(dir) / name.str();
}

EigenEstimate ReferenceSpectra::get(FamilyBase base, std::size_t k, std::size_t n, MatrixKind kind, double tol) {
  const Key key{static_cast<int>(base), k, n, static_cast<int>(kind), tol};
  {
    std::shared_lock lock(mu_);
    if (auto it = entries_.find(key); it != entries_.end()) return it->second;
  }
  EigenEstimate est;
  bool loaded = false;
  const auto path = file_for(key);
  if (path && std::filesystem::exists(*path)) {
    try {
      std::ifstream in(*path);
      nlohmann::json j = nlohmann::json::parse(in);
      est.value = j.at("value");
      est.lo = j.at("lo");
      est.hi = j.at("hi");
      est.residual = j.at("residual");
      est.converged = j.at("converged");
      est.engine = j.at("engine");
      loaded = true;
    } catch (const std::exception&) {
      loaded = false;
    }
  }
  if (!loaded) {
    SpectralConfig sc;
    sc.tol = tol;
    est = extreme_eigen(make_intact(base, k, n).graph, kind, sc);
    if (path) {
      std::error_code ec;
      std::filesystem::create_directories(path->parent_path(), ec);
      nlohmann::json j = {{"value", est.value},       {"lo", est.lo},
                          {"hi", est.hi},             {"residual", est.residual},
                          {"converged", est.converged}, {"engine", est.engine}};
      // Concurrent writers each rename a private file over the target.
      std::ostringstream tmp_name;
      tmp_name << path->filename().string() << ".tmp" << std::this_thread::get_id();
      const auto tmp = path->parent_path() / tmp_name.str();
      std::ofstream(tmp) << j.dump(2) << "\n";
      std::filesystem::rename(tmp, *path, ec);
    }
    ++computed_;
  }
  std::unique_lock lock(mu_);
  return entries_.emplace(key, std::move(est)).first->second;
}

// ---------------------------------------------------------------------------

namespace {

class PropEvaluator {
 public:
  PropEvaluator(const FamilyMember& m, const EigenEstimate& est, double tol)
      : m_(m), est_(est), f_(est.vector), slack_(std::max(10 * est.width(), tol)) {}

  double max_over(const VertexSet& s) const {
    double v = -std::numeric_limits<double>::infinity();
    for (Vertex x : s) v = std::max(v, f_[x]);
    return v;
  }
  double min_over(const VertexSet& s) const {
    double v = std::numeric_limits<double>::infinity();
    for (Vertex x : s) v = std::min(v, f_[x]);
    return v;
  }
  double max_all() const { return *std::max_element(f_.begin(), f_.end()); }

  /// Bounds decreasing in q are evaluated at the top of the interval.
  double q_conservative() const { return est_.hi; }

  PropositionCheck strict(std::string id, std::string statement, double lhs, double rhs) const {
    PropositionCheck p = make(std::move(id), PropOutcome::inconclusive, std::move(statement), lhs, rhs);
    if (p.margin > slack_) {
      p.outcome = PropOutcome::holds;
    } else if (p.margin < -slack_) {
      p.outcome = PropOutcome::fails;
    } else {
      p.detail = "near tie within slack " + fmt(slack_);
    }
    return p;
  }

  PropositionCheck non_strict(std::string id, std::string statement, double lhs, double rhs) const {
    PropositionCheck p = make(std::move(id), PropOutcome::holds, std::move(statement), lhs, rhs);
    if (p.margin < -slack_) p.outcome = PropOutcome::fails;
    if (p.margin < 0 && p.outcome == PropOutcome::holds) p.detail = "holds within slack " + fmt(slack_);
    return p;
  }

  static PropositionCheck vacuous(std::string id, std::string statement, std::string why) {
    PropositionCheck p = make(std::move(id), PropOutcome::holds, std::move(statement), 0.0, 0.0);
    p.vacuous = true;
    p.detail = "premise false: " + why;
    return p;
  }

  // For all a in A, b in B: f_a < f_b.
  PropositionCheck all_less(std::string id, std::string statement, const VertexSet& a, const VertexSet& b,
                            bool premise, std::string why) const {
    if (!premise) return vacuous(std::move(id), std::move(statement), std::move(why));
    if (a.empty() || b.empty()) return vacuous(std::move(id), std::move(statement), "empty comparison set");
    return strict(std::move(id), std::move(statement), max_over(a), min_over(b));
  }

  static PropositionCheck make(std::string id, PropOutcome o, std::string statement, double lhs, double rhs) {
    PropositionCheck p;
    p.id = std::move(id);
    p.outcome = o;
    p.statement = std::move(statement);
    p.lhs = lhs;
    p.rhs = rhs;
    p.margin = rhs - lhs;
    return p;
  }

  static std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << v;
    return os.str();
  }

 private:
  const FamilyMember& m_;
  const EigenEstimate& est_;
  const std::vector<double>& f_;
  double slack_;
};

PropositionCheck exact_bound(std::string id, std::string statement, const Graph& g, std::int64_t t, bool want_above,
                             bool strict, const CheckConfig& cfg, const EigenEstimate& est) {
  ThresholdVerdict v = try_compare_threshold(g, MatrixKind::signless_laplacian, Rational(t), cfg.compare);
  PropositionCheck p;
  p.id = std::move(id);
  p.statement = std::move(statement);
  p.lhs = est.value;
  p.rhs = static_cast<double>(t);
  p.margin = want_above ? est.lo - p.rhs : p.rhs - est.hi;
  p.detail = std::string(to_string(v.method)) + ": q " + to_symbol(v.relation) + " " + std::to_string(t);
  if (v.relation == Relation::undecided) {
    p.outcome = PropOutcome::inconclusive;
    return p;
  }
  bool ok;
  if (want_above) {
    ok = v.relation == Relation::greater || (!strict && v.relation == Relation::equal);
  } else {
    ok = v.relation == Relation::less || (!strict && v.relation == Relation::equal);
  }
  p.outcome = ok ? PropOutcome::holds : PropOutcome::fails;
  return p;
}

}  // namespace

std::vector<PropositionCheck> eigvec_structure_report(const FamilyMember& member, const CheckConfig& cfg) {
  if (member.kind != FamilyKind::F2) {
    throw std::invalid_argument("eigenvector propositions concern members of M2, L2 and B2");
  }
  SpectralConfig sc = cfg.spectral;
  EigenEstimate est = q_max(member.graph, sc);
  if (!est.converged || est.width() > sc.tol) {
    throw UnconvergedEigenvector("Perron vector of " + member.describe() + " did not converge (width " +
                                 std::to_string(est.width()) + ")");
  }
  PropEvaluator ev(member, est, sc.tol);
  const auto& c = member.classes;
  const double k = static_cast<double>(member.k);
  const double n = static_cast<double>(member.n);
  const double qh = ev.q_conservative();
  const auto ki = static_cast<std::int64_t>(member.k);
  const auto ni = static_cast<std::int64_t>(member.n);
  std::vector<PropositionCheck> out;
  const Graph& g = member.graph;

  if (member.base == FamilyBase::M || member.base == FamilyBase::L) {
    out.push_back(exact_bound("3.1", "q(G) > 2n-2k-3", g, 2 * ni - 2 * ki - 3, true, true, cfg, est));
    const std::string px = member.base == FamilyBase::M ? "3.2" : "3.7.1";
    out.push_back(ev.non_strict(px, "f_x <= k/(q-k) for x in X", ev.max_over(c.X), k / (qh - k)));
    VertexSet yz = c.Y;
    yz.insert(yz.end(), c.Z.begin(), c.Z.end());
    const double gap = ev.max_all() - ev.min_over(yz);
    const double gap_bound = (k * k + 2 * k + 6) / (2 * (qh - n + 1));
    if (member.base == FamilyBase::M) {
      out.push_back(ev.all_less("3.3", "f_y < f_z for y in Y2, z in Z1", c.Y2, c.Z1, !c.Y2.empty(), "Y2 empty"));
      out.push_back(ev.all_less("3.4", "f_w < f_z for w in Z2, z in Z1", c.Z2, c.Z1, !c.Z2.empty(), "Z2 empty"));
      out.push_back(ev.all_less("3.5.1", "f_s < f_t for s in Y2, t in Y1", c.Y2, c.Y1,
                                !c.Y1.empty() && !c.Y2.empty(), "Y1 or Y2 empty"));
      out.push_back(ev.all_less("3.5.2", "f_z < f_y for y in Y1, z in Z1", c.Z1, c.Y1, !c.Y1.empty(), "Y1 empty"));
      out.push_back(ev.non_strict("3.6", "max f - min_{Y u Z} f <= (k^2+2k+6)/(2(q-n+1))", gap, gap_bound));
    } else {
      const Vertex y = c.Y.front();
      const VertexSet ys{y};
      const bool full = g.degree(y) == member.n - 1;
      out.push_back(ev.all_less("3.7.2", "f_w < f_z for w in Z2, z in Z1", c.Z2, c.Z1, !c.Z2.empty(), "Z2 empty"));
      out.push_back(ev.all_less("3.7.3", "d(y) <= n-2 implies f_y < f_z for z in Z1", ys, c.Z1, !full, "d(y) = n-1"));
      out.push_back(ev.all_less("3.7.4", "d(y) = n-1 implies f_y > f_z for z in Z1", c.Z1, ys, full, "d(y) <= n-2"));
      out.push_back(ev.non_strict("3.7.5", "max f - min_{Y u Z} f <= (k^2+2k+6)/(2(q-n+1))", gap, gap_bound));
    }
  } else {
    out.push_back(exact_bound("4.1.1a", "q(G) >= 2n-k-1", g, 2 * ni - ki - 1, true, false, cfg, est));
    out.push_back(exact_bound("4.1.1b", "q(G) <= 2n-k+1", g, 2 * ni - ki + 1, false, false, cfg, est));
    out.push_back(ev.non_strict("4.1.2", "f_x <= k/(q-k) for x in X", ev.max_over(c.X), k / (qh - k)));
    out.push_back(ev.all_less("4.1.3", "f_y < f_w for y in Y2, w in W1", c.Y2, c.W1, !c.Y2.empty(), "Y2 empty"));
    out.push_back(ev.all_less("4.1.4", "f_w < f_y for y in Y1, w in W", c.W, c.Y1, !c.Y1.empty(), "Y1 empty"));
    out.push_back(ev.all_less("4.1.5", "f_t < f_y for t in Y2, y in Y1", c.Y2, c.Y1, !c.Y1.empty() && !c.Y2.empty(),
                              "Y1 or Y2 empty"));
    out.push_back(ev.all_less("4.1.6", "f_s < f_t for s in W2, t in W1", c.W2, c.W1, !c.W2.empty(), "W2 empty"));
    out.push_back(ev.all_less("4.1.7", "f_t < f_z for t in Z2, z in Z1", c.Z2, c.Z1, !c.Z2.empty(), "Z2 empty"));
    VertexSet yzw = c.Y;
    yzw.insert(yzw.end(), c.Z.begin(), c.Z.end());
    yzw.insert(yzw.end(), c.W.begin(), c.W.end());
    const double gap = ev.max_all() - ev.min_over(yzw);
    out.push_back(ev.non_strict("4.1.8", "max f - min_{Y u Z u W} f <= (3k^2+8k+20)/(4(q-n))", gap,
                                (3 * k * k + 8 * k + 20) / (4 * (qh - n))));
  }
  return out;
}

// ---------------------------------------------------------------------------

nlohmann::json to_json(const ThresholdVerdict& v) {
  return {{"relation", to_string(v.relation)},
          {"threshold", v.threshold ? nlohmann::json(v.threshold->str()) : nlohmann::json(nullptr)},
          {"threshold_value", v.threshold_value},
          {"method", to_string(v.method)},
          {"margin", v.margin},
          {"detail", v.detail}};
}

nlohmann::json to_json(const TheoremReport& r) {
  nlohmann::json hyps = nlohmann::json::array();
  for (const auto& h : r.hypotheses) hyps.push_back({{"name", h.name}, {"holds", h.holds}, {"detail", h.detail}});
  nlohmann::json exc = nullptr;
  if (r.exception) {
    exc = {{"family", r.exception->family}, {"detail", r.exception->detail}, {"mapping", r.exception->mapping}};
    if (r.exception->reconstruction) exc["reconstruction"] = to_json(*r.exception->reconstruction);
  }
  return {{"theorem_id", to_string(r.id)},
          {"k", r.k},
          {"hypotheses", hyps},
          {"condition", to_json(r.condition)},
          {"condition_holds", r.condition_holds},
          {"exception", exc},
          {"conclusion", to_string(r.conclusion)},
          {"notes", r.notes}};
}

nlohmann::json to_json(const PropositionCheck& p) {
  return {{"id", p.id},         {"outcome", to_string(p.outcome)}, {"statement", p.statement},
          {"lhs", p.lhs},       {"rhs", p.rhs},                    {"margin", p.margin},
          {"vacuous", p.vacuous}, {"detail", p.detail}};
}

}  // namespace spectralham
