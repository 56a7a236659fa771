#include <gtest/gtest.h>

#include <random>

#include "spectralham/canon.hpp"
#include "spectralham/families.hpp"
#include "support.hpp"

using namespace spectralham;
using testing_support::random_graph;
using testing_support::random_permutation;

TEST(Canon, InvariantUnderRelabeling) {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 300; ++i) {
    Graph g = random_graph(1 + i % 18, 0.1 + 0.8 * (i % 5) / 4.0, rng);
    auto perm = random_permutation(g.order(), rng);
    Graph h = relabel(g, perm);
    EXPECT_EQ(canonical_labeling(g).form, canonical_labeling(h).form);
    auto iso = find_isomorphism(g, h);
    ASSERT_TRUE(iso.has_value());
    EXPECT_EQ(relabel(g, *iso), h);
  }
}

TEST(Canon, LabelingRealizesTheForm) {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 50; ++i) {
    Graph g = random_graph(10, 0.4, rng);
    CanonicalLabeling lab = canonical_labeling(g);
    std::vector<Vertex> to_pos(g.order());
    for (std::size_t p = 0; p < lab.position.size(); ++p) to_pos[lab.position[p]] = static_cast<Vertex>(p);
    Graph c = relabel(g, to_pos);
    EXPECT_EQ(canonical_labeling(c).form, lab.form);
  }
}

TEST(Canon, DistinguishesNonIsomorphicGraphs) {
  EXPECT_FALSE(isomorphic(cycle_graph(6), disjoint_union(cycle_graph(3), cycle_graph(3))));
  EXPECT_FALSE(isomorphic(path_graph(4), complete_bipartite(1, 3)));
  EXPECT_FALSE(isomorphic(complete(4), complete(5)));
  // Same degree sequence, 3-regular on 8 vertices: cube versus two K4.
  std::vector<Edge> cube;
  for (Vertex v = 0; v < 8; ++v)
    for (Vertex b : {1u, 2u, 4u})
      if ((v ^ b) > v) cube.push_back({v, v ^ b});
  EXPECT_FALSE(isomorphic(make_graph(8, cube), disjoint_union(complete(4), complete(4))));
  EXPECT_FALSE(find_isomorphism(path_graph(5), cycle_graph(5)).has_value());
}

TEST(Canon, ColorsRestrictIsomorphism) {
  Graph p = path_graph(3);
  std::vector<std::int64_t> a{1, 0, 0};
  std::vector<std::int64_t> b{0, 0, 1};
  std::vector<std::int64_t> c{0, 1, 0};
  EXPECT_EQ(canonical_labeling(p, a).form, canonical_labeling(p, b).form);
  EXPECT_NE(canonical_labeling(p, a).form, canonical_labeling(p, c).form);
}

TEST(Canon, RegularAndSymmetricGraphs) {
  EXPECT_TRUE(isomorphic(petersen(), relabel(petersen(), std::vector<Vertex>{3, 1, 4, 0, 5, 9, 2, 6, 8, 7})));
  EXPECT_TRUE(isomorphic(make_B(3, 30).graph, make_B(3, 30).graph));
  CanonicalLabeling big = canonical_labeling(complete_bipartite(40, 40));
  EXPECT_LT(big.leaves, 100u);
}

TEST(Canon, LeafLimit) {
  EXPECT_THROW(canonical_labeling(petersen(), {}, 1), CanonLimitExceeded);
}

TEST(Canon, FamilyMembersUnderRandomRelabeling) {
  std::mt19937_64 rng(43);
  for (const auto& m : enumerate_family({.tag = FamilyTag::M2, .k = 3, .n = 20})) {
    Graph h = relabel(m.graph, random_permutation(m.graph.order(), rng));
    EXPECT_TRUE(isomorphic(m.graph, h));
  }
}
