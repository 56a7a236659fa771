#include <gtest/gtest.h>

#include <random>
#include <set>

#include "spectralham/families.hpp"
#include "spectralham/hamilton.hpp"
#include "support.hpp"

using namespace spectralham;
using testing_support::brute_force_hamiltonian;
using testing_support::random_graph;

namespace {

void expect_certified(const Graph& g, const HamVerdict& v) {
  switch (v.status) {
    case HamStatus::hamiltonian:
      ASSERT_TRUE(v.cycle.has_value());
      EXPECT_TRUE(verify_cycle(g, *v.cycle)) << verify_cycle(g, *v.cycle).reason;
      break;
    case HamStatus::non_hamiltonian:
      // exact_dp may conclude without a cut (e.g. Petersen).
      if (v.method != HamMethod::exact_dp) {
        ASSERT_TRUE(v.cut.has_value());
      }
      if (v.cut) {
        EXPECT_TRUE(verify_cut(g, *v.cut));
        EXPECT_EQ(components_without(g, v.cut->cut), v.cut->components);
      }
      break;
    case HamStatus::undecided:
      EXPECT_FALSE(v.cycle.has_value());
      break;
  }
}

Graph random_cubic(std::size_t n, std::mt19937_64& rng) {
  for (;;) {
    std::vector<Vertex> points;
    for (Vertex v = 0; v < n; ++v)
      for (int i = 0; i < 3; ++i) points.push_back(v);
    std::shuffle(points.begin(), points.end(), rng);
    std::set<Edge> es;
    bool ok = true;
    for (std::size_t i = 0; i < points.size() && ok; i += 2) {
      if (points[i] == points[i + 1]) ok = false;
      else ok = es.insert(make_edge(points[i], points[i + 1])).second;
    }
    if (ok) return make_graph(n, std::vector<Edge>(es.begin(), es.end()));
  }
}

std::set<Edge> edge_set(const Graph& g) {
  auto es = g.edges();
  return {es.begin(), es.end()};
}

}  // namespace

TEST(VerifyCycle, Examples) {
  Graph c5 = cycle_graph(5);
  EXPECT_TRUE(verify_cycle(c5, std::vector<Vertex>{0, 1, 2, 3, 4}));
  Graph c4 = delete_edges(complete(4), std::vector<Edge>{{0, 2}, {1, 3}});
  EXPECT_FALSE(verify_cycle(c4, std::vector<Vertex>{0, 2, 1, 3}));
  EXPECT_TRUE(verify_cycle(c4, std::vector<Vertex>{0, 1, 2, 3}));
  EXPECT_FALSE(verify_cycle(c5, std::vector<Vertex>{0, 1, 2, 3}));
  EXPECT_FALSE(verify_cycle(c5, std::vector<Vertex>{0, 1, 2, 3, 3}));
  EXPECT_FALSE(verify_cycle(c5, std::vector<Vertex>{0, 1, 2, 3, 9}));
  EXPECT_FALSE(verify_cycle(complete(2), std::vector<Vertex>{0, 1}));
  EXPECT_FALSE(verify_cycle(c5, std::vector<Vertex>{0, 1, 2, 3, 9}).reason.empty());
}

TEST(VerifyCut, RejectsBadCertificates) {
  Graph g = make_M(2, 10).graph;
  EXPECT_TRUE(verify_cut(g, {{0, 1}, 3}));
  EXPECT_FALSE(verify_cut(g, {{0, 1}, 4}));
  EXPECT_FALSE(verify_cut(g, {{1, 0}, 3}));
  EXPECT_FALSE(verify_cut(g, {{0}, 1}));
  EXPECT_TRUE(verify_cut(disjoint_union(complete(3), complete(3)), {{}, 2}));
}

TEST(ExactDp, Examples) {
  HamVerdict k5 = exact_hamiltonian(complete(5));
  EXPECT_EQ(k5.status, HamStatus::hamiltonian);
  expect_certified(complete(5), k5);

  HamVerdict p = exact_hamiltonian(petersen());
  EXPECT_EQ(p.status, HamStatus::non_hamiltonian);
  EXPECT_EQ(p.method, HamMethod::exact_dp);
  EXPECT_FALSE(p.cut.has_value());

  EXPECT_EQ(exact_hamiltonian(make_M(2, 10).graph).status, HamStatus::non_hamiltonian);
  EXPECT_THROW(exact_hamiltonian(complete(25)), OrderTooLarge);
  EXPECT_EQ(exact_hamiltonian(complete(2)).status, HamStatus::non_hamiltonian);
}

TEST(ExactDp, AgreesWithPermutationSearch) {
  std::mt19937_64 rng(51);
  int ham = 0;
  for (int i = 0; i < 500; ++i) {
    Graph g = random_graph(3 + i % 7, 0.25 + 0.5 * (i % 5) / 4.0, rng);
    HamVerdict v = exact_hamiltonian(g);
    ASSERT_NE(v.status, HamStatus::undecided);
    const bool want = brute_force_hamiltonian(g);
    EXPECT_EQ(v.status == HamStatus::hamiltonian, want);
    expect_certified(g, v);
    ham += want;
  }
  // both outcomes are exercised
  EXPECT_GT(ham, 50);
  EXPECT_LT(ham, 450);
}

TEST(Closure, Examples) {
  HamVerdict k = closure_certify(complete(7));
  EXPECT_EQ(k.status, HamStatus::hamiltonian);
  expect_certified(complete(7), k);
  EXPECT_EQ(closure_certify(petersen()).status, HamStatus::undecided);
  EXPECT_TRUE(bondy_chvatal_closure(petersen()).trace.empty());

  FamilyMember m = make_M_prime(3, 20);
  HamVerdict v = closure_certify(m.graph);
  ASSERT_EQ(v.status, HamStatus::hamiltonian);
  EXPECT_EQ(v.method, HamMethod::closure);
  expect_certified(m.graph, v);
}

TEST(Closure, SoundAgainstExactSearch) {
  std::mt19937_64 rng(52);
  int certified = 0;
  for (int i = 0; i < 400; ++i) {
    Graph g = random_graph(4 + i % 9, 0.45 + 0.4 * (i % 4) / 3.0, rng);
    HamVerdict c = closure_certify(g);
    if (c.status != HamStatus::hamiltonian) continue;
    ++certified;
    expect_certified(g, c);
    EXPECT_EQ(exact_hamiltonian(g).status, HamStatus::hamiltonian);
  }
  EXPECT_GT(certified, 50);
}

TEST(Closure, OrderIndependentAndIdempotent) {
  std::mt19937_64 rng(53);
  for (int i = 0; i < 200; ++i) {
    Graph g = random_graph(5 + i % 20, 0.5, rng);
    Closure a = bondy_chvatal_closure(g, ClosureOrder::ascending);
    Closure d = bondy_chvatal_closure(g, ClosureOrder::descending);
    EXPECT_EQ(edge_set(a.graph), edge_set(d.graph));
    EXPECT_TRUE(bondy_chvatal_closure(a.graph).trace.empty());
    EXPECT_EQ(a.graph.size(), g.size() + a.trace.size());
  }
}

TEST(CutSearch, Examples) {
  HamVerdict m = violating_cut(make_M(2, 10).graph);
  ASSERT_EQ(m.status, HamStatus::non_hamiltonian);
  EXPECT_EQ(m.cut->cut, (VertexSet{0, 1}));
  EXPECT_EQ(m.cut->components, 3u);

  HamVerdict l = violating_cut(make_L(2, 10).graph);
  ASSERT_EQ(l.status, HamStatus::non_hamiltonian);
  EXPECT_EQ(l.cut->cut, (VertexSet{0}));
  EXPECT_EQ(l.cut->components, 2u);

  FamilyMember b = make_B(2, 5);
  HamVerdict vb = violating_cut(b.graph);
  ASSERT_EQ(vb.status, HamStatus::non_hamiltonian);
  EXPECT_LE(vb.cut->cut.size(), 5u);
  expect_certified(b.graph, vb);

  EXPECT_EQ(violating_cut(petersen()).status, HamStatus::undecided);
  HamVerdict dis = violating_cut(disjoint_union(complete(3), complete(4)));
  ASSERT_EQ(dis.status, HamStatus::non_hamiltonian);
  EXPECT_TRUE(dis.cut->cut.empty());
}

TEST(CutSearch, CertificatesAreSoundOnRandomGraphs) {
  std::mt19937_64 rng(54);
  for (int i = 0; i < 300; ++i) {
    Graph g = random_graph(4 + i % 9, 0.2 + 0.5 * (i % 3) / 2.0, rng);
    HamVerdict v = violating_cut(g);
    expect_certified(g, v);
    if (v.status == HamStatus::non_hamiltonian) {
      EXPECT_FALSE(brute_force_hamiltonian(g));
    }
  }
}

TEST(Decide, Examples) {
  FamilyMember mp = make_M_prime(3, 20);
  HamVerdict v = decide(mp.graph);
  EXPECT_EQ(v.status, HamStatus::hamiltonian);
  expect_certified(mp.graph, v);

  FamilyMember m = make_M(3, 20);
  HamVerdict w = decide(m.graph);
  EXPECT_EQ(w.status, HamStatus::non_hamiltonian);
  EXPECT_EQ(w.method, HamMethod::cut_search);
  expect_certified(m.graph, w);

  std::mt19937_64 rng(55);
  Graph cubic = random_cubic(30, rng);
  HamVerdict c = decide(cubic);
  expect_certified(cubic, c);
}

TEST(Decide, EveryVerdictCarriesACertificate) {
  std::mt19937_64 rng(56);
  for (int i = 0; i < 300; ++i) {
    Graph g = random_graph(3 + i % 16, 0.15 + 0.7 * (i % 6) / 5.0, rng);
    HamVerdict v = decide(g);
    EXPECT_NE(v.status, HamStatus::undecided);
    expect_certified(g, v);
    if (g.order() <= 9) {
      EXPECT_EQ(v.status == HamStatus::hamiltonian, brute_force_hamiltonian(g));
    }
  }
}

TEST(Decide, LargeVariantOfM) {
  FamilyMember m = make_M_prime(3, 153);
  HamVerdict v = closure_certify(m.graph);
  ASSERT_EQ(v.status, HamStatus::hamiltonian);
  expect_certified(m.graph, v);
}

// The bipartite variant with an edge added inside S is not Hamiltonian:
// a cycle alternates sides except along the single S-S edge, so it would
// need |S| = |T| + 1.
TEST(Decide, BipartiteVariantIsNotHamiltonian) {
  for (std::size_t n = 6; n <= 9; ++n) {
    FamilyMember b = make_B_prime(3, n);
    HamVerdict exact = exact_hamiltonian(b.graph);
    EXPECT_EQ(exact.status, HamStatus::non_hamiltonian) << "n=" << n;
    EXPECT_EQ(closure_certify(b.graph).status, HamStatus::undecided);
  }
  FamilyMember big = make_B_prime(3, 226);
  HamVerdict v = decide(big.graph);
  ASSERT_EQ(v.status, HamStatus::non_hamiltonian);
  expect_certified(big.graph, v);
}

TEST(Decide, ExactCapAndDeadline) {
  DecideConfig cfg;
  cfg.exact_cap = 5;
  EXPECT_EQ(decide(petersen(), cfg).status, HamStatus::undecided);
  Deadline past = Deadline::after(std::chrono::duration<double>(0));
  EXPECT_THROW(exact_hamiltonian(make_M(2, 20).graph, 24, past), TimeBudgetExceeded);
}
