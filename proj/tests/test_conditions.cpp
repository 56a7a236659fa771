#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <random>
#include <thread>

#include "spectralham/canon.hpp"
#include "spectralham/conditions.hpp"
#include "spectralham/families.hpp"
#include "spectralham/graph_io.hpp"
#include "spectralham/hamilton.hpp"
#include "support.hpp"

using namespace spectralham;
using testing_support::random_graph;
using testing_support::random_permutation;

namespace {

const TheoremId kAll[] = {TheoremId::THM_NI16, TheoremId::THM_1,    TheoremId::THM_LN_ADJ,  TheoremId::THM_LN_Q,
                          TheoremId::THM_2,    TheoremId::EDGE_THM, TheoremId::EDGE_THM_BIP};

bool all_hold(const TheoremReport& r) {
  return std::all_of(r.hypotheses.begin(), r.hypotheses.end(), [](const Hypothesis& h) { return h.holds; });
}

void expect_consistent(const TheoremReport& r) {
  switch (r.conclusion) {
    case Conclusion::hamiltonian_guaranteed:
      EXPECT_TRUE(all_hold(r));
      EXPECT_TRUE(r.condition_holds);
      EXPECT_FALSE(r.exception.has_value());
      break;
    case Conclusion::exception_member:
      ASSERT_TRUE(r.exception.has_value());
      EXPECT_TRUE(r.exception->reconstruction.has_value());
      break;
    case Conclusion::not_applicable:
      break;
  }
}

Graph minus(const Graph& g, std::vector<Edge> es) { return delete_edges(g, es); }

// Reconstruction equals the input after relabelling, or contains it in subgraph mode.
void expect_reconstructs(const Graph& g, const Recognition& rec, bool exact) {
  ASSERT_TRUE(rec.match.has_value()) << rec.reason;
  ASSERT_TRUE(rec.match->reconstruction.has_value());
  const Graph& target = rec.match->reconstruction->graph;
  ASSERT_EQ(target.order(), g.order());
  Graph mapped = relabel(g, rec.match->mapping);
  if (exact) {
    EXPECT_EQ(mapped.edges(), target.edges());
  } else {
    for (const Edge& e : mapped.edges()) EXPECT_TRUE(target.adjacent(e.u, e.v));
  }
}

}  // namespace

TEST(Thresholds, Formulas) {
  EXPECT_EQ(thm1_threshold(2), 48u);
  EXPECT_EQ(thm1_threshold(3), 153u);
  EXPECT_EQ(thm2_threshold(2), 74u);
  EXPECT_EQ(thm2_threshold(3), 226u);
  EXPECT_EQ(nikiforov_threshold(2), 14u);
  EXPECT_EQ(li_ning_threshold(3), 16u);
  EXPECT_EQ(parse_theorem_id("EDGE_THM_BIP"), TheoremId::EDGE_THM_BIP);
  EXPECT_THROW(parse_theorem_id("THM_9"), std::invalid_argument);
}

TEST(Thm1, Examples) {
  TheoremReport k50 = check_thm1(complete(50), 2);
  EXPECT_EQ(k50.conclusion, Conclusion::hamiltonian_guaranteed);
  EXPECT_EQ(k50.condition.relation, Relation::greater);
  EXPECT_EQ(k50.condition.threshold, Rational(94));

  TheoremReport m = check_thm1(make_M(2, 48).graph, 2);
  EXPECT_EQ(m.conclusion, Conclusion::exception_member);
  EXPECT_TRUE(m.condition_holds);
  EXPECT_EQ(m.exception->family, "M1");
  EXPECT_TRUE(m.exception->reconstruction->deleted.empty());

  auto m2 = enumerate_family({.tag = FamilyTag::M2, .k = 2, .n = 48});
  for (const auto& mem : m2) {
    TheoremReport r = check_thm1(mem.graph, 2);
    EXPECT_EQ(r.conclusion, Conclusion::not_applicable);
    EXPECT_EQ(r.condition.relation, Relation::less);
  }

  FamilyMember mp = make_M_prime(3, 153);
  TheoremReport p = check_thm1(mp.graph, 3);
  EXPECT_EQ(p.conclusion, Conclusion::hamiltonian_guaranteed);
  EXPECT_EQ(decide(mp.graph).status, HamStatus::hamiltonian);
  for (const auto& r : {k50, m, p}) expect_consistent(r);
}

TEST(Thm1, HypothesisFailuresAreReported) {
  TheoremReport small = check_thm1(complete(20), 2);
  EXPECT_EQ(small.conclusion, Conclusion::not_applicable);
  EXPECT_FALSE(all_hold(small));
  TheoremReport dis = check_thm1(disjoint_union(complete(30), complete(30)), 2);
  EXPECT_EQ(dis.conclusion, Conclusion::not_applicable);
  TheoremReport k1 = check_thm1(complete(50), 1);
  EXPECT_EQ(k1.conclusion, Conclusion::not_applicable);
}

TEST(Thm2, Examples) {
  TheoremReport k = check_thm2(complete_bipartite(74, 74), 2);
  EXPECT_EQ(k.conclusion, Conclusion::hamiltonian_guaranteed);

  TheoremReport b = check_thm2(make_B(2, 74).graph, 2);
  EXPECT_EQ(b.conclusion, Conclusion::exception_member);
  EXPECT_EQ(b.condition.relation, Relation::greater);

  for (const auto& mem : enumerate_family({.tag = FamilyTag::B2, .k = 2, .n = 74})) {
    TheoremReport r = check_thm2(mem.graph, 2);
    EXPECT_EQ(r.conclusion, Conclusion::not_applicable);
    EXPECT_EQ(r.condition.relation, Relation::less);
  }
  EXPECT_EQ(check_thm2(complete(148), 2).conclusion, Conclusion::not_applicable);
}

TEST(Nikiforov, Examples) {
  TheoremReport k = check_nikiforov(complete(20), 2);
  EXPECT_EQ(k.conclusion, Conclusion::hamiltonian_guaranteed);
  EXPECT_EQ(k.condition.relation, Relation::greater);

  TheoremReport m = check_nikiforov(make_M(2, 16).graph, 2);
  EXPECT_EQ(m.conclusion, Conclusion::exception_member);
  EXPECT_EQ(m.exception->family, "M");
  EXPECT_EQ(check_nikiforov(make_L(2, 16).graph, 2).conclusion, Conclusion::exception_member);

  TheoremReport p = check_nikiforov(make_M_prime(3, 153).graph, 3);
  EXPECT_EQ(p.conclusion, Conclusion::not_applicable);
  EXPECT_EQ(p.condition.relation, Relation::less);
}

TEST(LiNing, Examples) {
  for (MatrixKind kind : {MatrixKind::adjacency, MatrixKind::signless_laplacian}) {
    TheoremReport k = check_li_ning(complete_bipartite(9, 9), 2, kind);
    EXPECT_EQ(k.conclusion, Conclusion::hamiltonian_guaranteed);
    expect_consistent(k);
  }
  TheoremReport b = check_li_ning(make_B(2, 9).graph, 2, MatrixKind::signless_laplacian);
  EXPECT_EQ(b.conclusion, Conclusion::exception_member);
  EXPECT_EQ(b.condition.method, CompareMethod::isomorphism);

  TheoremReport bp = check_li_ning(make_B_prime(3, 16).graph, 3, MatrixKind::adjacency);
  EXPECT_EQ(bp.conclusion, Conclusion::not_applicable);
  EXPECT_EQ(check_li_ning(complete_bipartite(3, 3), 2, MatrixKind::adjacency).condition.relation,
            Relation::undecided);
}

TEST(EdgeTheorems, Examples) {
  TheoremReport k = check_edge_theorem(complete(20), 2);
  EXPECT_EQ(k.condition.threshold, Rational(145));
  EXPECT_EQ(k.condition.method, CompareMethod::exact_count);
  EXPECT_EQ(k.conclusion, Conclusion::hamiltonian_guaranteed);

  TheoremReport m = check_edge_theorem(make_M(2, 20).graph, 2);
  EXPECT_EQ(m.conclusion, Conclusion::exception_member);
  expect_consistent(m);

  Graph b = make_B(2, 10).graph;
  EXPECT_EQ(b.size(), 84u);
  TheoremReport rb = check_edge_theorem_bip(b, 2);
  EXPECT_EQ(rb.condition.threshold, Rational(79));
  EXPECT_TRUE(rb.condition_holds);
  EXPECT_EQ(rb.conclusion, Conclusion::exception_member);

  EXPECT_EQ(check_edge_theorem_bip(complete_bipartite(10, 10), 2).conclusion,
            Conclusion::hamiltonian_guaranteed);
}

TEST(Recognizers, Examples) {
  FamilyMember m = make_M(2, 48);
  Graph one = minus(m.graph, {make_edge(m.classes.Y[0], m.classes.Z[0])});
  Recognition r = recognize_M1(one, 2);
  ASSERT_TRUE(r);
  EXPECT_EQ(r.match->reconstruction->deleted.size(), 1u);
  expect_reconstructs(one, r, true);

  Recognition k = recognize_M1(complete(48), 2);
  EXPECT_FALSE(k);
  EXPECT_NE(k.reason.find("degree 2"), std::string::npos) << k.reason;

  const auto& z = m.classes.Z;
  Graph two = minus(m.graph, {make_edge(z[0], z[1]), make_edge(z[2], z[3])});
  Recognition t = recognize_M1(two, 2);
  EXPECT_FALSE(t);
  EXPECT_NE(t.reason.find("exceeds deletion budget"), std::string::npos) << t.reason;
}

TEST(Recognizers, RoundTripUnderRelabeling) {
  std::mt19937_64 rng(61);
  for (std::size_t k : {2u, 3u, 4u}) {
    for (FamilyTag tag : {FamilyTag::M1, FamilyTag::L1, FamilyTag::B1}) {
      const std::size_t n = tag == FamilyTag::B1 ? 3 * k : 4 * k + 4;
      for (const auto& mem : enumerate_family({.tag = tag, .k = k, .n = n})) {
        Graph g = relabel(mem.graph, random_permutation(mem.graph.order(), rng));
        Recognition r = tag == FamilyTag::M1   ? recognize_M1(g, k)
                        : tag == FamilyTag::L1 ? recognize_L1(g, k)
                                               : recognize_B1(g, k);
        SCOPED_TRACE(mem.tag() + " " + mem.describe());
        expect_reconstructs(g, r, true);
        if (r) {
          EXPECT_EQ(r.match->reconstruction->deleted.size(), mem.deleted.size());
        }
      }
    }
  }
}

TEST(Recognizers, RejectSecondFamilies) {
  for (std::size_t k : {2u, 3u}) {
    for (const auto& mem : enumerate_family({.tag = FamilyTag::M2, .k = k, .n = 20})) EXPECT_FALSE(recognize_M1(mem.graph, k));
    for (const auto& mem : enumerate_family({.tag = FamilyTag::B2, .k = k, .n = 12})) EXPECT_FALSE(recognize_B1(mem.graph, k));
  }
}

TEST(Recognizers, SubgraphMode) {
  std::mt19937_64 rng(62);
  for (std::size_t k : {2u, 3u}) {
    FamilyMember m = make_M(k, 20);
    auto es = m.graph.edges();
    std::shuffle(es.begin(), es.end(), rng);
    std::vector<Edge> drop;
    for (const Edge& e : es) {
      Graph t = minus(m.graph, {e});
      if (min_degree(t) >= k && drop.size() < 30) {
        bool clash = false;
        for (const Edge& d : drop) clash |= d.u == e.u || d.u == e.v || d.v == e.u || d.v == e.v;
        if (!clash) drop.push_back(e);
      }
    }
    Graph g = relabel(minus(m.graph, drop), random_permutation(20, rng));
    expect_reconstructs(g, subgraph_of_M(g, k), false);

    FamilyMember l = make_L(k, 20);
    Graph lg = relabel(l.graph, random_permutation(20, rng));
    expect_reconstructs(lg, subgraph_of_L(lg, k), false);

    FamilyMember b = make_B(k, 10);
    Graph bg = relabel(b.graph, random_permutation(20, rng));
    expect_reconstructs(bg, subgraph_of_B(bg, k), false);
  }
  EXPECT_FALSE(subgraph_of_M(complete(20), 2));
  EXPECT_FALSE(subgraph_of_B(complete_bipartite(10, 10), 2));
}

// No guarantee may be issued for a graph without a Hamiltonian cycle.
TEST(Soundness, DenseRandomGraphs) {
  std::mt19937_64 rng(63);
  std::uniform_int_distribution<std::size_t> order(8, 20);
  std::uniform_real_distribution<double> density(0.6, 0.95);
  std::size_t guarantees = 0;
  for (int i = 0; i < 500; ++i) {
    Graph g = random_graph(order(rng), density(rng), rng);
    const std::size_t kmax = std::min<std::size_t>(min_degree(g), 4);
    std::optional<bool> ham;
    for (std::size_t k = 1; k <= kmax; ++k) {
      for (TheoremId id : kAll) {
        TheoremReport r = check_theorem(id, g, k);
        expect_consistent(r);
        if (r.conclusion != Conclusion::hamiltonian_guaranteed) continue;
        ++guarantees;
        if (!ham) ham = exact_hamiltonian(g).status == HamStatus::hamiltonian;
        EXPECT_TRUE(*ham) << to_string(id) << " k=" << k;
      }
    }
  }
  EXPECT_GT(guarantees, 100u);
}

TEST(Soundness, FamilyMembersAndVariants) {
  std::vector<FamilyMember> members;
  for (FamilyTag tag : {FamilyTag::M1, FamilyTag::M2, FamilyTag::L1, FamilyTag::L2})
    for (auto& m : enumerate_family({.tag = tag, .k = 2, .n = 18})) members.push_back(std::move(m));
  for (FamilyTag tag : {FamilyTag::B1, FamilyTag::B2})
    for (auto& m : enumerate_family({.tag = tag, .k = 2, .n = 9})) members.push_back(std::move(m));
  members.push_back(make_M_prime(3, 20));
  members.push_back(make_B_prime(3, 9));
  for (const auto& m : members) {
    HamVerdict truth = decide(m.graph);
    for (TheoremId id : kAll) {
      TheoremReport r = check_theorem(id, m.graph, m.k);
      expect_consistent(r);
      if (r.conclusion == Conclusion::hamiltonian_guaranteed) {
        EXPECT_EQ(truth.status, HamStatus::hamiltonian) << m.tag() << " " << m.describe() << " " << to_string(id);
      }
      if (r.conclusion == Conclusion::exception_member && (m.kind == FamilyKind::F1 || m.kind == FamilyKind::intact)) {
        EXPECT_NE(truth.status, HamStatus::hamiltonian);
      }
    }
  }
}

// Condition-only audit at orders below the theorem's threshold: every
// non-Hamiltonian graph with min degree >= 2 and lambda >= n-3, collected up to
// isomorphism. The exceptional graphs M_2(n) and L_2(n) must be among them
// and be recognized; any other violators are printed for inspection.
TEST(Audit, ExceptionCompletenessAtSmallOrder) {
  for (std::size_t n = 5; n <= 7; ++n) {
    const std::size_t pairs = n * (n - 1) / 2;
    std::vector<Edge> all;
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v) all.push_back({u, v});
    std::map<CanonicalForm, Graph> violators;
    for (std::uint32_t mask = 0; mask < (1u << pairs); ++mask) {
      std::vector<std::size_t> deg(n, 0);
      for (std::size_t i = 0; i < pairs; ++i)
        if (mask >> i & 1) ++deg[all[i].u], ++deg[all[i].v];
      if (*std::min_element(deg.begin(), deg.end()) < 2) continue;
      std::vector<Edge> es;
      for (std::size_t i = 0; i < pairs; ++i)
        if (mask >> i & 1) es.push_back(all[i]);
      Graph g = make_graph(n, es);
      if (exact_hamiltonian(g).status == HamStatus::hamiltonian) continue;
      if (!compare_lambda_threshold(g, static_cast<std::int64_t>(n - 3)).at_least()) continue;
      violators.emplace(canonical_labeling(g).form, g);
    }
    std::size_t recognized = 0;
    for (const auto& [form, g] : violators) {
      TheoremReport r = check_nikiforov(g, 2);
      if (r.exception) {
        ++recognized;
      } else {
        std::cout << "  n=" << n << " unrecognized violator " << write_graph6(g) << " (" << g.size() << " edges)\n";
      }
    }
    EXPECT_TRUE(violators.count(canonical_labeling(make_L(2, n).graph).form));
    EXPECT_TRUE(violators.count(canonical_labeling(make_M(2, n).graph).form));
    EXPECT_EQ(recognized, 2u);
    std::cout << "  n=" << n << ": " << violators.size() << " violators up to isomorphism, " << recognized
              << " recognized\n";
  }
}

TEST(Reports, DeterministicJson) {
  std::vector<Graph> gs{complete(20), make_M(2, 16).graph, make_B(2, 9).graph, petersen()};
  for (const Graph& g : gs) {
    for (TheoremId id : kAll) {
      const std::string a = to_json(check_theorem(id, g, 2)).dump();
      const std::string b = to_json(check_theorem(id, g, 2)).dump();
      EXPECT_EQ(a, b);
    }
  }
  auto j = to_json(check_thm1(complete(50), 2));
  EXPECT_EQ(j["theorem_id"], "THM_1");
  EXPECT_EQ(j["conclusion"], "hamiltonian_guaranteed");
  EXPECT_TRUE(j.contains("hypotheses"));
  EXPECT_EQ(j["condition"]["relation"], "greater");
}

TEST(ReferenceCache, ConcurrentReadersSeeOneValue) {
  auto& cache = ReferenceSpectra::instance();
  cache.clear();
  const std::size_t before = cache.computed();
  std::vector<double> seen(8);
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < seen.size(); ++t)
    pool.emplace_back([&, t] { seen[t] = cache.get(FamilyBase::B, 3, 20, MatrixKind::adjacency, 1e-9).value; });
  for (auto& th : pool) th.join();
  for (double v : seen) EXPECT_EQ(v, seen.front());
  const std::size_t after = cache.computed();
  EXPECT_GE(after - before, 1u);
  EXPECT_LE(after - before, seen.size());
  cache.get(FamilyBase::B, 3, 20, MatrixKind::adjacency, 1e-9);
  EXPECT_EQ(cache.computed(), after);
}

TEST(ReferenceCache, PersistsToDisk) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("spectralham-cache-" + std::to_string(::getpid()));
  fs::remove_all(dir);
  ::setenv("SPECTRALHAM_CACHE_DIR", dir.c_str(), 1);
  auto& cache = ReferenceSpectra::instance();
  cache.clear();
  const std::size_t c0 = cache.computed();
  EigenEstimate a = cache.get(FamilyBase::B, 2, 11, MatrixKind::signless_laplacian, 1e-9);
  EXPECT_EQ(cache.computed(), c0 + 1);
  EXPECT_TRUE(fs::exists(dir / "B_k2_n11_signless_laplacian_1e-09.json"));
  cache.clear();
  EigenEstimate b = cache.get(FamilyBase::B, 2, 11, MatrixKind::signless_laplacian, 1e-9);
  EXPECT_EQ(cache.computed(), c0 + 1);
  EXPECT_EQ(a.lo, b.lo);
  EXPECT_EQ(a.hi, b.hi);
  ::unsetenv("SPECTRALHAM_CACHE_DIR");
  cache.clear();
  fs::remove_all(dir);
}

TEST(Propositions, ExtremalMembersSmallOrder) {
  // Evaluated on the q-maximizing orbit representative.
  for (FamilyTag tag : {FamilyTag::M2, FamilyTag::L2, FamilyTag::B2}) {
    const std::size_t n = tag == FamilyTag::B2 ? 74 : 48;
    auto ms = enumerate_family({.tag = tag, .k = 2, .n = n});
    const FamilyMember* best = nullptr;
    double q = -1;
    for (const auto& m : ms) {
      const double v = q_max(m.graph).value;
      if (v > q) q = v, best = &m;
    }
    ASSERT_NE(best, nullptr);
    auto checks = eigvec_structure_report(*best);
    EXPECT_FALSE(checks.empty());
    for (const auto& c : checks) {
      EXPECT_EQ(c.outcome, PropOutcome::holds) << best->tag() << " " << c.id << ": " << c.detail;
      EXPECT_FALSE(to_json(c).dump().empty());
    }
  }
  EXPECT_THROW(eigvec_structure_report(make_M(2, 48)), std::invalid_argument);
}
