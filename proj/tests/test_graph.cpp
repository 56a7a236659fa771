#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "spectralham/canon.hpp"
#include "spectralham/graph.hpp"
#include "spectralham/graph_io.hpp"
#include "support.hpp"

using namespace spectralham;
using testing_support::random_graph;

namespace {

std::vector<std::size_t> sorted_degrees(const Graph& g) {
  auto d = degree_sequence(g);
  std::sort(d.begin(), d.end());
  return d;
}

std::size_t degree_sum(const Graph& g) {
  std::size_t s = 0;
  for (Vertex v = 0; v < g.order(); ++v) s += g.degree(v);
  return s;
}

GraphErrc error_code(std::size_t n, std::vector<Edge> es) {
  try {
    make_graph(n, es);
  } catch (const GraphError& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected a GraphError";
  return GraphErrc::invalid_size;
}

}  // namespace

TEST(MakeGraph, Triangle) {
  Graph g = make_graph(3, std::vector<Edge>{{0, 1}, {1, 2}, {0, 2}});
  EXPECT_EQ(g.size(), 3u);
  EXPECT_EQ(g, complete(3));
}

TEST(MakeGraph, EdgelessAndCycle) {
  EXPECT_EQ(make_graph(4, std::vector<Edge>{}).size(), 0u);
  Graph c5 = make_graph(5, std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
  EXPECT_EQ(c5.size(), 5u);
  for (Vertex v = 0; v < 5; ++v) EXPECT_EQ(c5.degree(v), 2u);
}

TEST(MakeGraph, DistinctValidationErrors) {
  EXPECT_EQ(error_code(3, {{0, 3}}), GraphErrc::endpoint_out_of_range);
  EXPECT_EQ(error_code(3, {{1, 1}}), GraphErrc::self_loop);
  EXPECT_EQ(error_code(3, {{0, 1}, {1, 0}}), GraphErrc::duplicate_edge);
}

TEST(MakeGraph, BipartitionMustBeRespected) {
  std::vector<Side> sides{Side::S, Side::S, Side::T};
  EXPECT_THROW(Graph::make(3, std::vector<Edge>{{0, 1}}, sides), GraphError);
  EXPECT_NO_THROW(Graph::make(3, std::vector<Edge>{{0, 2}, {1, 2}}, sides));
}

TEST(Constructors, CompleteEdgelessBipartite) {
  Graph k5 = complete(5);
  EXPECT_EQ(k5.size(), 10u);
  for (Vertex v = 0; v < 5; ++v) EXPECT_EQ(k5.degree(v), 4u);
  EXPECT_EQ(edgeless(3).size(), 0u);
  Graph k23 = complete_bipartite(2, 3);
  EXPECT_EQ(k23.size(), 6u);
  EXPECT_EQ(sorted_degrees(k23), (std::vector<std::size_t>{2, 2, 2, 3, 3}));
  ASSERT_TRUE(k23.bipartition().has_value());
  EXPECT_EQ(k23.side_count(Side::S), 2u);
  EXPECT_THROW(complete(0), GraphError);
  EXPECT_THROW(complete_bipartite(0, 3), GraphError);
}

TEST(Join, Examples) {
  Graph p3 = join(complete(1), edgeless(2));
  EXPECT_TRUE(isomorphic(p3, path_graph(3)));

  Graph m = join(complete(2), disjoint_union(edgeless(2), complete(3)));
  EXPECT_EQ(m.order(), 7u);
  EXPECT_EQ(m.size(), 14u);

  EXPECT_TRUE(isomorphic(join(edgeless(2), edgeless(2)), cycle_graph(4)));
}

TEST(Join, KeepsLabelsOfTheFirstGraph) {
  Graph g = join(path_graph(3), edgeless(2));
  EXPECT_TRUE(g.adjacent(0, 1));
  EXPECT_FALSE(g.adjacent(0, 2));
  EXPECT_TRUE(g.adjacent(0, 3));
  EXPECT_FALSE(g.adjacent(3, 4));
}

TEST(DisjointUnion, Examples) {
  Graph a = disjoint_union(edgeless(2), complete(3));
  EXPECT_EQ(a.order(), 5u);
  EXPECT_EQ(a.size(), 3u);
  EXPECT_EQ(components(a), 3u);

  Graph b = disjoint_union(complete(3), complete(3));
  EXPECT_EQ(b.size(), 6u);
  EXPECT_EQ(components(b), 2u);

  Graph c = disjoint_union(edgeless(2), complete(8));
  EXPECT_EQ(c.size(), 28u);
  std::vector<std::size_t> want(2, 0);
  want.insert(want.end(), 8, 7);
  EXPECT_EQ(sorted_degrees(c), want);
}

TEST(DeleteEdges, Examples) {
  Graph diamond = delete_edges(complete(4), std::vector<Edge>{{0, 1}});
  EXPECT_EQ(sorted_degrees(diamond), (std::vector<std::size_t>{2, 2, 3, 3}));
  Graph k4 = complete(4);
  EXPECT_EQ(delete_edges(k4, std::vector<Edge>{}), k4);
  EXPECT_THROW(delete_edges(diamond, std::vector<Edge>{{0, 1}}), GraphError);
}

TEST(DeleteEdges, KeepsBipartition) {
  Graph k = complete_bipartite(3, 3);
  Graph g = delete_edges(k, std::vector<Edge>{{0, 3}});
  ASSERT_TRUE(g.bipartition().has_value());
  EXPECT_EQ(g.size(), 8u);
}

TEST(Statistics, InducedAndComponents) {
  Graph m = join(complete(2), disjoint_union(complete(3), edgeless(2)));
  EXPECT_EQ(min_degree(m), 2u);
  EXPECT_EQ(components(disjoint_union(edgeless(2), complete(3))), 3u);
  std::vector<Vertex> yz{0, 1, 2, 3, 4};
  EXPECT_EQ(induced(m, yz), complete(5));
  EXPECT_THROW(induced(m, std::vector<Vertex>{0, 9}), GraphError);
  EXPECT_THROW(degree(m, 7), GraphError);
}

TEST(Properties, HandshakeOnRandomGraphs) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    Graph g = random_graph(1 + i % 30, 0.3, rng);
    EXPECT_EQ(degree_sum(g), 2 * g.size());
  }
}

TEST(Properties, JoinAndUnionEdgeCounts) {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<std::size_t> size(1, 15);
  std::uniform_real_distribution<double> density(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    Graph g = random_graph(size(rng), density(rng), rng);
    Graph h = random_graph(size(rng), density(rng), rng);
    Graph j = join(g, h);
    Graph u = disjoint_union(g, h);
    EXPECT_EQ(j.order(), g.order() + h.order());
    EXPECT_EQ(j.size(), g.size() + h.size() + g.order() * h.order());
    EXPECT_EQ(u.size(), g.size() + h.size());
    EXPECT_EQ(components(u), components(g) + components(h));
    EXPECT_EQ(degree_sum(j), 2 * j.size());
  }
}

TEST(Properties, DeleteThenReaddRecovers) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 100; ++i) {
    Graph g = random_graph(12, 0.5, rng);
    auto es = g.edges();
    std::shuffle(es.begin(), es.end(), rng);
    es.resize(es.size() / 3);
    Graph d = delete_edges(g, es);
    EXPECT_EQ(d.size(), g.size() - es.size());
    EXPECT_EQ(add_edges(d, es), g);
  }
}

TEST(Properties, BipartiteEdgesCross) {
  std::mt19937_64 rng(14);
  for (int i = 0; i < 50; ++i) {
    Graph k = complete_bipartite(4, 5);
    auto es = k.edges();
    std::shuffle(es.begin(), es.end(), rng);
    es.resize(7);
    Graph g = delete_edges(k, es);
    const auto& sides = *g.bipartition();
    for (const Edge& e : g.edges()) EXPECT_NE(sides[e.u], sides[e.v]);
  }
}

TEST(Coloring, BalancedBipartition) {
  EXPECT_TRUE(balanced_bipartition(cycle_graph(6)).has_value());
  EXPECT_FALSE(two_coloring(cycle_graph(5)).has_value());
  EXPECT_FALSE(balanced_bipartition(complete_bipartite(2, 3)).has_value());
  // Two components whose flips balance the sides.
  Graph g = disjoint_union(complete_bipartite(1, 2), complete_bipartite(1, 2).with_bipartition(std::nullopt));
  auto sides = balanced_bipartition(g);
  ASSERT_TRUE(sides.has_value());
  EXPECT_EQ(std::count(sides->begin(), sides->end(), Side::S), 3);
}

TEST(Io, EdgeListRoundTrip) {
  Graph k = complete_bipartite(3, 4);
  Graph back = parse_edge_list(write_edge_list(k));
  EXPECT_EQ(back, k);
  ASSERT_TRUE(back.bipartition().has_value());
  EXPECT_EQ(back.side_count(Side::S), 3u);
}

TEST(Io, Graph6RoundTrip) {
  std::mt19937_64 rng(15);
  for (std::size_t n : {1u, 2u, 7u, 12u, 62u, 63u, 70u}) {
    Graph g = random_graph(n, 0.4, rng);
    EXPECT_EQ(parse_graph6(write_graph6(g)), g);
    EXPECT_EQ(parse_graph_text(">>graph6<<" + write_graph6(g)), g);
  }
  EXPECT_EQ(write_graph6(petersen()).size(), 9u);
  EXPECT_TRUE(isomorphic(parse_graph6("IheA@GUAo"), petersen()));
}

TEST(Io, ParseErrorsCarryLineNumbers) {
  try {
    parse_edge_list("# header\n3 2\n0 1\n1 5\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
  }
  EXPECT_THROW(parse_edge_list("3 2\n0 1\n"), ParseError);
  EXPECT_THROW(parse_edge_list("3 1\n0 0\n"), ParseError);
  EXPECT_THROW(parse_edge_list("3 2\n0 1\n1 0\n"), ParseError);
}
