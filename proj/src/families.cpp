#include "spectralham/families.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "spectralham/canon.hpp"

namespace spectralham {

const char* to_string(FamilyBase b) {
  switch (b) {
    case FamilyBase::M: return "M";
    case FamilyBase::L: return "L";
    case FamilyBase::B: return "B";
  }
  return "?";
}

const char* to_string(FamilyTag t) {
  switch (t) {
    case FamilyTag::M1: return "M1";
    case FamilyTag::M2: return "M2";
    case FamilyTag::L1: return "L1";
    case FamilyTag::L2: return "L2";
    case FamilyTag::B1: return "B1";
    case FamilyTag::B2: return "B2";
  }
  return "?";
}

FamilyTag parse_family_tag(std::string_view text) {
  for (FamilyTag t : {FamilyTag::M1, FamilyTag::M2, FamilyTag::L1, FamilyTag::L2, FamilyTag::B1,
                      FamilyTag::B2}) {
    if (text == to_string(t)) return t;
  }
  throw std::invalid_argument("unknown family tag '" + std::string(text) + "'");
}

FamilyBase base_of(FamilyTag t) {
  switch (t) {
    case FamilyTag::M1:
    case FamilyTag::M2: return FamilyBase::M;
    case FamilyTag::L1:
    case FamilyTag::L2: return FamilyBase::L;
    default: return FamilyBase::B;
  }
}

FamilyKind kind_of(FamilyTag t) {
  switch (t) {
    case FamilyTag::M1:
    case FamilyTag::L1:
    case FamilyTag::B1: return FamilyKind::F1;
    default: return FamilyKind::F2;
  }
}

namespace {

VertexSet range_set(std::size_t from, std::size_t to) {
  VertexSet s(to - from);
  std::iota(s.begin(), s.end(), static_cast<Vertex>(from));
  return s;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw FamilyParameterError(what);
}

std::string padded(std::size_t v) {
  std::ostringstream os;
  os << std::setw(6) << std::setfill('0') << v;
  return os.str();
}

}  // namespace

std::string FamilyMember::tag() const {
  std::string s = to_string(base);
  switch (kind) {
    case FamilyKind::intact: break;
    case FamilyKind::F1: s += "1"; break;
    case FamilyKind::F2: s += "2"; break;
    case FamilyKind::variant: s += "'"; break;
  }
  return s;
}

std::string FamilyMember::describe() const {
  std::map<Vertex, std::string> name;
  auto label = [&](const VertexSet& set, const char* letter) {
    for (std::size_t i = 0; i < set.size(); ++i) name[set[i]] = letter + std::to_string(i);
  };
  label(classes.X, "X");
  label(classes.Y, "Y");
  label(classes.Z, "Z");
  label(classes.W, "W");
  std::ostringstream os;
  bool first = true;
  for (const Edge& e : added) {
    os << (first ? "" : " ") << "+" << name[e.u] << "-" << name[e.v];
    first = false;
  }
  for (const Edge& e : deleted) {
    os << (first ? "" : " ") << name[e.u] << "-" << name[e.v];
    first = false;
  }
  return first ? "intact" : os.str();
}

std::string FamilyMember::key() const {
  std::string s = tag() + "|" + padded(k) + "|" + padded(n) + "|" + padded(deleted.size());
  for (const Edge& e : added) s += "+" + padded(e.u) + "-" + padded(e.v);
  for (const Edge& e : deleted) s += "|" + padded(e.u) + "-" + padded(e.v);
  return s;
}

void refine_classification(FamilyMember& m) {
  VertexClassification& c = m.classes;
  const Graph& g = m.graph;
  auto split = [&](const VertexSet& set, std::size_t full, VertexSet& top, VertexSet& rest) {
    top.clear();
    rest.clear();
    for (Vertex v : set) (g.degree(v) == full ? top : rest).push_back(v);
  };
  const std::size_t n = m.n;
  const std::size_t k = m.k;
  if (m.base == FamilyBase::B) {
    split(c.Y, n, c.Y1, c.Y2);
    split(c.W, n - k, c.W1, c.W2);
    split(c.Z, n, c.Z1, c.Z2);
  } else {
    split(c.Y, n - 1, c.Y1, c.Y2);
    split(c.Z, n - k - 1, c.Z1, c.Z2);
  }
}

FamilyMember make_M(std::size_t k, std::size_t n) {
  require(k > 1, "M_k(n) needs k > 1");
  require(n >= 2 * k + 1, "M_k(n) needs n >= 2k+1");
  FamilyMember m;
  m.graph = join(complete(k), disjoint_union(complete(n - 2 * k), edgeless(k)));
  m.base = FamilyBase::M;
  m.k = k;
  m.n = n;
  m.classes.Y = range_set(0, k);
  m.classes.Z = range_set(k, n - k);
  m.classes.X = range_set(n - k, n);
  refine_classification(m);
  return m;
}

FamilyMember make_L(std::size_t k, std::size_t n) {
  require(k >= 1, "L_k(n) needs k >= 1");
  require(n >= k + 2, "L_k(n) needs n >= k+2");
  FamilyMember m;
  m.graph = join(complete(1), disjoint_union(complete(n - k - 1), complete(k)));
  m.base = FamilyBase::L;
  m.k = k;
  m.n = n;
  m.classes.Y = {0};
  m.classes.Z = range_set(1, n - k);
  m.classes.X = range_set(n - k, n);
  refine_classification(m);
  return m;
}

FamilyMember make_B(std::size_t k, std::size_t n) {
  require(k > 1, "B_k(n) needs k > 1");
  require(n >= 2 * k, "B_k(n) needs n >= 2k");
  std::vector<Edge> edges;
  edges.reserve(n * n);
  // S = 0..n-1 (X then Z), T = n..2n-1 (Y then W); X sees only Y.
  for (Vertex s = 0; s < n; ++s) {
    for (Vertex t = static_cast<Vertex>(n); t < 2 * n; ++t) {
      const bool s_in_x = s < k;
      const bool t_in_w = t >= n + k;
      if (s_in_x && t_in_w) continue;
      edges.push_back({s, t});
    }
  }
  std::vector<Side> sides(2 * n, Side::T);
  std::fill(sides.begin(), sides.begin() + static_cast<std::ptrdiff_t>(n), Side::S);
  FamilyMember m;
  m.graph = Graph::make(2 * n, edges, sides);
  m.base = FamilyBase::B;
  m.k = k;
  m.n = n;
  m.classes.X = range_set(0, k);
  m.classes.Z = range_set(k, n);
  m.classes.Y = range_set(n, n + k);
  m.classes.W = range_set(n + k, 2 * n);
  refine_classification(m);
  return m;
}

FamilyMember make_intact(FamilyBase base, std::size_t k, std::size_t n) {
  switch (base) {
    case FamilyBase::M: return make_M(k, n);
    case FamilyBase::L: return make_L(k, n);
    case FamilyBase::B: return make_B(k, n);
  }
  throw FamilyParameterError("unknown family");
}

FamilyMember make_M_prime(std::size_t k, std::size_t n) {
  require(k >= 3, "M'_k(n) needs k >= 3");
  require(n >= 2 * k + 4, "M'_k(n) needs at least four Z vertices (n >= 2k+4)");
  FamilyMember m = make_M(k, n);
  const auto& X = m.classes.X;
  const auto& Z = m.classes.Z;
  m.added = {make_edge(X[0], X[1])};
  m.deleted = {make_edge(Z[0], Z[1]), make_edge(Z[2], Z[3])};
  m.graph = delete_edges(add_edges(m.graph, m.added), m.deleted);
  m.kind = FamilyKind::variant;
  refine_classification(m);
  return m;
}

FamilyMember make_B_prime(std::size_t k, std::size_t n) {
  require(k >= 3, "B'_k(n) needs k >= 3");
  require(n >= 2 * k, "B'_k(n) needs n >= 2k");
  FamilyMember m = make_B(k, n);
  const auto& X = m.classes.X;
  const auto& Z = m.classes.Z;
  const auto& W = m.classes.W;
  m.added = {make_edge(X[0], X[1])};
  m.deleted = {make_edge(Z[0], W[0]), make_edge(Z[1], W[1])};
  m.graph = delete_edges(add_edges(m.graph, m.added), m.deleted);
  m.kind = FamilyKind::variant;
  refine_classification(m);
  return m;
}

std::vector<Edge> e1_edges(const FamilyMember& intact) {
  if (intact.kind != FamilyKind::intact || !intact.deleted.empty() || !intact.added.empty()) {
    throw std::invalid_argument("E1 is defined on the intact family graph");
  }
  std::vector<Edge> out;
  const auto& c = intact.classes;
  if (intact.base == FamilyBase::B) {
    for (Vertex z : c.Z) {
      for (Vertex y : c.Y) out.push_back(make_edge(z, y));
      for (Vertex w : c.W) out.push_back(make_edge(z, w));
    }
  } else {
    VertexSet yz = c.Y;
    yz.insert(yz.end(), c.Z.begin(), c.Z.end());
    for (std::size_t i = 0; i < yz.size(); ++i)
      for (std::size_t j = i + 1; j < yz.size(); ++j) out.push_back(make_edge(yz[i], yz[j]));
  }
  std::sort(out.begin(), out.end());
  return out;
}

DeletionBudget deletion_budget(FamilyTag tag, std::size_t k) {
  const std::size_t cap = base_of(tag) == FamilyBase::L ? k / 4 : k * k / 4;
  if (kind_of(tag) == FamilyKind::F1) return {0, cap};
  return {cap + 1, cap + 1};
}

FamilyMember make_member(FamilyTag tag, std::size_t k, std::size_t n, std::vector<Edge> removed) {
  FamilyMember m = make_intact(base_of(tag), k, n);
  for (Edge& e : removed) e = make_edge(e.u, e.v);
  std::sort(removed.begin(), removed.end());
  if (std::adjacent_find(removed.begin(), removed.end()) != removed.end()) {
    throw GraphError(GraphErrc::duplicate_edge, "deleted edge listed twice");
  }
  const DeletionBudget budget = deletion_budget(tag, k);
  if (removed.size() < budget.min || removed.size() > budget.max) {
    throw FamilyParameterError(std::string(to_string(tag)) + " allows " + std::to_string(budget.min) +
                               ".." + std::to_string(budget.max) + " deleted edges, got " +
                               std::to_string(removed.size()));
  }
  const std::vector<Edge> e1 = e1_edges(m);
  for (const Edge& e : removed) {
    if (!std::binary_search(e1.begin(), e1.end(), e)) {
      throw FamilyParameterError("edge " + std::to_string(e.u) + "-" + std::to_string(e.v) +
                                 " is not in E1");
    }
  }
  m.graph = delete_edges(m.graph, removed);
  m.deleted = std::move(removed);
  m.kind = kind_of(tag);
  refine_classification(m);
  return m;
}

const char* to_string(EnumerationMode m) {
  switch (m) {
    case EnumerationMode::orbit: return "orbit";
    case EnumerationMode::exhaustive: return "exhaustive";
    case EnumerationMode::sample: return "sample";
  }
  return "?";
}

EnumerationMode parse_enumeration_mode(std::string_view text) {
  if (text == "orbit") return EnumerationMode::orbit;
  if (text == "exhaustive") return EnumerationMode::exhaustive;
  if (text == "sample") return EnumerationMode::sample;
  throw std::invalid_argument("unknown enumeration mode '" + std::string(text) + "'");
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("empty range");
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = rng();
    if (r >= threshold) return r % bound;
  }
}

namespace {

// Class-coloured configuration of deleted edges; vertex i has colour color[i].
struct Pattern {
  std::vector<int> color;
  std::vector<Edge> edges;
};

struct ClassLayout {
  std::vector<VertexSet> classes;
  std::vector<std::pair<int, int>> allowed;  // colour pairs, first <= second

  bool allows(int a, int b) const {
    if (a > b) std::swap(a, b);
    return std::find(allowed.begin(), allowed.end(), std::pair{a, b}) != allowed.end();
  }
};

ClassLayout layout_for(const FamilyMember& intact) {
  ClassLayout l;
  if (intact.base == FamilyBase::B) {
    l.classes = {intact.classes.Y, intact.classes.W, intact.classes.Z};
    l.allowed = {{0, 2}, {1, 2}};
  } else {
    l.classes = {intact.classes.Y, intact.classes.Z};
    l.allowed = {{0, 0}, {0, 1}, {1, 1}};
  }
  return l;
}

CanonicalForm pattern_form(const Pattern& p, Pattern* canonical) {
  Graph g = Graph::make(p.color.size(), p.edges);
  std::vector<std::int64_t> colors(p.color.begin(), p.color.end());
  CanonicalLabeling lab = canonical_labeling(g, colors);
  if (canonical) {
    std::vector<Vertex> where(p.color.size());
    for (std::size_t i = 0; i < lab.position.size(); ++i) where[lab.position[i]] = static_cast<Vertex>(i);
    canonical->color.assign(p.color.size(), 0);
    for (std::size_t v = 0; v < p.color.size(); ++v) canonical->color[where[v]] = p.color[v];
    canonical->edges.clear();
    for (const Edge& e : p.edges) canonical->edges.push_back(make_edge(where[e.u], where[e.v]));
    std::sort(canonical->edges.begin(), canonical->edges.end());
  }
  return std::move(lab.form);
}

std::vector<Pattern> orbit_patterns(const ClassLayout& layout, DeletionBudget budget) {
  const int ncolors = static_cast<int>(layout.classes.size());
  std::vector<Pattern> out;
  std::vector<Pattern> level{Pattern{}};
  for (std::size_t m = 0;; ++m) {
    if (m >= budget.min) out.insert(out.end(), level.begin(), level.end());
    if (m == budget.max) break;
    std::map<CanonicalForm, Pattern> next;
    for (const Pattern& p : level) {
      std::vector<std::size_t> used(ncolors, 0);
      for (int c : p.color) ++used[c];
      auto consider = [&](Pattern q) {
        Pattern canon;
        CanonicalForm f = pattern_form(q, &canon);
        next.emplace(std::move(f), std::move(canon));
      };
      const std::size_t nv = p.color.size();
      // Both endpoints already present.
      for (std::size_t a = 0; a < nv; ++a) {
        for (std::size_t b = a + 1; b < nv; ++b) {
          Edge e{static_cast<Vertex>(a), static_cast<Vertex>(b)};
          if (!layout.allows(p.color[a], p.color[b])) continue;
          if (std::find(p.edges.begin(), p.edges.end(), e) != p.edges.end()) continue;
          Pattern q = p;
          q.edges.push_back(e);
          consider(std::move(q));
        }
      }
      // One new endpoint.
      for (std::size_t a = 0; a < nv; ++a) {
        for (int c = 0; c < ncolors; ++c) {
          if (used[c] >= layout.classes[c].size() || !layout.allows(p.color[a], c)) continue;
          Pattern q = p;
          q.color.push_back(c);
          q.edges.push_back({static_cast<Vertex>(a), static_cast<Vertex>(nv)});
          consider(std::move(q));
        }
      }
      // Two new endpoints.
      for (int c1 = 0; c1 < ncolors; ++c1) {
        for (int c2 = c1; c2 < ncolors; ++c2) {
          if (!layout.allows(c1, c2)) continue;
          const std::size_t need1 = c1 == c2 ? 2 : 1;
          if (used[c1] + need1 > layout.classes[c1].size()) continue;
          if (c1 != c2 && used[c2] + 1 > layout.classes[c2].size()) continue;
          Pattern q = p;
          q.color.push_back(c1);
          q.color.push_back(c2);
          q.edges.push_back({static_cast<Vertex>(nv), static_cast<Vertex>(nv + 1)});
          consider(std::move(q));
        }
      }
    }
    level.clear();
    for (auto& [f, p] : next) level.push_back(std::move(p));
    if (level.empty()) break;
  }
  return out;
}

std::vector<Edge> realize(const Pattern& p, const ClassLayout& layout) {
  std::vector<std::size_t> next(layout.classes.size(), 0);
  std::vector<Vertex> label(p.color.size());
  for (std::size_t i = 0; i < p.color.size(); ++i) label[i] = layout.classes[p.color[i]][next[p.color[i]]++];
  std::vector<Edge> out;
  for (const Edge& e : p.edges) out.push_back(make_edge(label[e.u], label[e.v]));
  std::sort(out.begin(), out.end());
  return out;
}

// X shares its degree with Z (M, L at n = 2k+1) or with W (B at n = 2k): the
// intact graph then has automorphisms mixing classes, and distinct pattern
// orbits can realize isomorphic members.
bool mixes_classes(const FamilyMember& intact) {
  const Graph& g = intact.graph;
  const auto& c = intact.classes;
  const std::size_t dx = g.degree(c.X.front());
  if (g.degree(c.Z.front()) == dx) return true;
  return !c.W.empty() && g.degree(c.W.front()) == dx;
}

std::size_t saturating_binomial(std::size_t n, std::size_t r, std::size_t cap) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  unsigned __int128 v = 1;
  for (std::size_t i = 1; i <= r; ++i) {
    v = v * (n - r + i) / i;
    if (v > cap) return cap + 1;
  }
  return static_cast<std::size_t>(v);
}

}  // namespace

struct FamilyEnumerator::State {
  FamilyMember intact;
  DeletionBudget budget;
  std::vector<Edge> e1;
  // orbit
  std::vector<Pattern> patterns;
  ClassLayout layout;
  // exhaustive
  std::vector<std::size_t> combo;
  bool combo_started = false;
  // sample
  std::mt19937_64 rng;
  std::size_t produced = 0;
};

FamilyEnumerator::FamilyEnumerator(EnumerationSpec spec) : spec_(spec) { reset(); }
FamilyEnumerator::~FamilyEnumerator() = default;
FamilyEnumerator::FamilyEnumerator(FamilyEnumerator&&) noexcept = default;
FamilyEnumerator& FamilyEnumerator::operator=(FamilyEnumerator&&) noexcept = default;

void FamilyEnumerator::reset() {
  auto st = std::make_unique<State>();
  st->intact = make_intact(base_of(spec_.tag), spec_.k, spec_.n);
  st->budget = deletion_budget(spec_.tag, spec_.k);
  st->e1 = e1_edges(st->intact);
  switch (spec_.mode) {
    case EnumerationMode::orbit:
      st->layout = layout_for(st->intact);
      st->patterns = orbit_patterns(st->layout, st->budget);
      if (mixes_classes(st->intact)) {
        std::set<CanonicalForm> seen;
        std::vector<Pattern> kept;
        for (Pattern& p : st->patterns) {
          const Graph g = delete_edges(st->intact.graph, realize(p, st->layout));
          if (seen.insert(canonical_labeling(g).form).second) kept.push_back(std::move(p));
        }
        st->patterns = std::move(kept);
      }
      break;
    case EnumerationMode::exhaustive: {
      std::size_t total = 0;
      for (std::size_t s = st->budget.min; s <= st->budget.max; ++s) {
        total += saturating_binomial(st->e1.size(), s, spec_.exhaustive_cap);
        if (total > spec_.exhaustive_cap) {
          throw EnumerationCapExceeded("exhaustive enumeration of " + std::string(to_string(spec_.tag)) +
                                       " exceeds the cap of " + std::to_string(spec_.exhaustive_cap) +
                                       " members");
        }
      }
      st->combo.clear();
      break;
    }
    case EnumerationMode::sample:
      st->rng.seed(spec_.seed);
      break;
  }
  state_ = std::move(st);
}

std::optional<FamilyMember> FamilyEnumerator::next() {
  State& st = *state_;
  switch (spec_.mode) {
    case EnumerationMode::orbit: {
      if (st.produced >= st.patterns.size()) return std::nullopt;
      return make_member(spec_.tag, spec_.k, spec_.n, realize(st.patterns[st.produced++], st.layout));
    }
    case EnumerationMode::exhaustive: {
      const std::size_t m = st.e1.size();
      auto& c = st.combo;
      if (!st.combo_started) {
        st.combo_started = true;
        c.resize(st.budget.min);
        std::iota(c.begin(), c.end(), std::size_t{0});
        if (c.size() > m) return std::nullopt;
      } else {
        // Advance to the next combination of the same size, else grow.
        std::size_t r = c.size();
        std::size_t i = r;
        while (i > 0 && c[i - 1] == m - r + i - 1) --i;
        if (i == 0) {
          if (r + 1 > st.budget.max || r + 1 > m) return std::nullopt;
          c.resize(r + 1);
          std::iota(c.begin(), c.end(), std::size_t{0});
        } else {
          ++c[i - 1];
          for (std::size_t j = i; j < r; ++j) c[j] = c[j - 1] + 1;
        }
      }
      std::vector<Edge> removed;
      for (std::size_t idx : c) removed.push_back(st.e1[idx]);
      ++st.produced;
      return make_member(spec_.tag, spec_.k, spec_.n, std::move(removed));
    }
    case EnumerationMode::sample: {
      if (st.produced >= spec_.samples) return std::nullopt;
      ++st.produced;
      const std::size_t span = st.budget.max - st.budget.min + 1;
      const std::size_t size =
          std::min<std::size_t>(st.budget.min + uniform_below(st.rng, span), st.e1.size());
      std::vector<std::size_t> idx(st.e1.size());
      std::iota(idx.begin(), idx.end(), std::size_t{0});
      std::vector<Edge> removed;
      for (std::size_t i = 0; i < size; ++i) {
        std::size_t j = i + uniform_below(st.rng, idx.size() - i);
        std::swap(idx[i], idx[j]);
        removed.push_back(st.e1[idx[i]]);
      }
      return make_member(spec_.tag, spec_.k, spec_.n, std::move(removed));
    }
  }
  return std::nullopt;
}

std::vector<FamilyMember> enumerate_family(const EnumerationSpec& spec) {
  FamilyEnumerator it(spec);
  std::vector<FamilyMember> out;
  while (auto m = it.next()) out.push_back(std::move(*m));
  return out;
}

nlohmann::json to_json(const FamilyMember& m) {
  auto edges = [](const std::vector<Edge>& es) {
    nlohmann::json a = nlohmann::json::array();
    for (const Edge& e : es) a.push_back({e.u, e.v});
    return a;
  };
  const auto& c = m.classes;
  nlohmann::json cls = {{"X", c.X}, {"Y", c.Y}, {"Z", c.Z}, {"Y1", c.Y1}, {"Y2", c.Y2},
                        {"Z1", c.Z1}, {"Z2", c.Z2}};
  if (m.base == FamilyBase::B) {
    cls["W"] = c.W;
    cls["W1"] = c.W1;
    cls["W2"] = c.W2;
  }
  return {{"family_tag", m.tag()}, {"k", m.k},           {"n", m.n}, {"deleted", edges(m.deleted)},
          {"added", edges(m.added)}, {"classification", cls}};
}

}  // namespace spectralham
