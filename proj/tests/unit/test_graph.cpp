#include <gtest/gtest.h>

#include <random>

#include "heat/fixtures.hpp"
#include "heat/graph.hpp"

using namespace heat;

namespace {

std::string fixture(const std::string& name) { return std::string(HEAT_FIXTURE_DIR) + "/" + name; }

}  // namespace

TEST(IntegerLine, NeighborsAndDegree) {
  IntegerLine z;
  std::vector<Neighbor> n;
  z.neighbors(vertex(5), n);
  ASSERT_EQ(n.size(), 2u);
  EXPECT_EQ(id_of(n[0].to) + id_of(n[1].to), 10);
  EXPECT_DOUBLE_EQ(degree(z, vertex(-3)), 2.0);
  EXPECT_EQ(distance(z, vertex(-4), vertex(7)), 11);
}

TEST(IntegerLine, WeightedDegree) {
  IntegerLine z(3.0, 2.0);
  EXPECT_DOUBLE_EQ(degree(z, vertex(0)), 3.0);
  EXPECT_DOUBLE_EQ(*z.degree_sup(), 3.0);
}

TEST(Lattice, EncodeDecodeRoundTrip) {
  Lattice l(3);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    std::vector<std::int64_t> c;
    for (int d = 0; d < 3; ++d) c.push_back(static_cast<std::int64_t>(uniform_index(rng, 2001)) - 1000);
    EXPECT_EQ(l.decode(l.encode(c)), c);
  }
  EXPECT_EQ(l.encode(std::vector<std::int64_t>{0, 0, 0}), l.root());
}

TEST(Lattice, LabelsRoundTrip) {
  Lattice l(2);
  const auto v = l.encode(std::vector<std::int64_t>{-3, 4});
  EXPECT_EQ(l.vertex_label(v), "-3,4");
  EXPECT_EQ(l.parse_vertex("-3,4"), v);
  EXPECT_THROW(l.parse_vertex("1,2,3"), DomainError);
}

TEST(Lattice, ClosedFormDistanceMatchesBfs) {
  Lattice l(2);
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    std::vector<std::int64_t> a{static_cast<std::int64_t>(uniform_index(rng, 7)) - 3,
                                static_cast<std::int64_t>(uniform_index(rng, 7)) - 3};
    std::vector<std::int64_t> b{static_cast<std::int64_t>(uniform_index(rng, 7)) - 3,
                                static_cast<std::int64_t>(uniform_index(rng, 7)) - 3};
    const auto x = l.encode(a);
    const auto y = l.encode(b);
    EXPECT_EQ(*l.closed_form_distance(x, y), *bfs_distance(l, x, y, 20));
  }
}

TEST(Lattice, RejectsBadDimension) {
  EXPECT_THROW(Lattice(0), DomainError);
  EXPECT_THROW(Lattice(5), DomainError);
}

TEST(RegularTree, BallSizes) {
  RegularTree t(3);
  // |B_R| = 1 + 3 (2^R - 1)
  for (int r = 0; r <= 8; ++r) EXPECT_EQ(ball(t, t.root(), r).size(), 1u + 3u * ((1u << r) - 1u));
}

TEST(RegularTree, WordRoundTripAndDepth) {
  RegularTree t(4);
  const std::vector<int> word{2, 0, 2, 1};
  const auto v = t.encode(word);
  EXPECT_EQ(t.decode(v), word);
  EXPECT_EQ(t.depth(v), 4);
  EXPECT_EQ(t.vertex_label(v), "2.0.2.1");
  EXPECT_EQ(t.parse_vertex("2.0.2.1"), v);
  EXPECT_EQ(t.vertex_label(t.root()), "root");
}

TEST(RegularTree, DistanceMatchesBfs) {
  RegularTree t(3);
  const auto vs = ball(t, t.root(), 5);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const auto x = vs[uniform_index(rng, vs.size())];
    const auto y = vs[uniform_index(rng, vs.size())];
    EXPECT_EQ(*t.closed_form_distance(x, y), *bfs_distance(t, x, y, 12));
  }
}

TEST(RegularTree, EveryVertexHasDegreeK) {
  RegularTree t(3);
  for (Vertex v : ball(t, t.root(), 4)) EXPECT_DOUBLE_EQ(degree(t, v), 3.0);
}

TEST(FiniteGraph, LoadsFixtureAndRoundTrips) {
  const auto g = load_graph_file(fixture("weighted_triangle.json"));
  EXPECT_EQ(g->size(), 3u);
  EXPECT_DOUBLE_EQ(g->weight(vertex(0), vertex(1)), 1.5);
  EXPECT_DOUBLE_EQ(degree(*g, vertex(1)), (1.5 + 0.25) / 2.0);
  const auto again = load_graph(graph_to_json(*g));
  for (Vertex v : g->vertices()) EXPECT_DOUBLE_EQ(degree(*again, v), degree(*g, v));
}

TEST(FiniteGraph, SchemaViolationsNameTheRecord) {
  EXPECT_THROW(load_graph_file(fixture("bad_measure.json")), SchemaError);
  EXPECT_THROW(load_graph_file(fixture("bad_asymmetric.json")), SchemaError);
  EXPECT_THROW(load_graph(R"({"root": 5, "vertices": [{"id": 0, "mu": 1}], "edges": []})"), SchemaError);
  EXPECT_THROW(load_graph(R"({"root": 0, "vertices": [{"id": 0, "mu": 1}], "edges": [{"u": 0, "v": 0, "w": 1}]})"),
               SchemaError);
  EXPECT_THROW(load_graph(R"({"root": 0, "vertices": [{"id": 0, "mu": 1}], "edges": [{"u": 0, "v": 3, "w": 1}]})"),
               SchemaError);
  EXPECT_THROW(load_graph(R"({"root": 0, "vertices": [{"id": 0, "mu": 1}, {"id": 0, "mu": 1}], "edges": []})"),
               SchemaError);
  EXPECT_THROW(load_graph("not json"), SchemaError);
  try {
    load_graph(R"({"root": 0, "vertices": [{"id": 0, "mu": 1}, {"id": 1, "mu": 1}], "edges": [{"u": 0, "v": 1, "w": -1}]})");
    FAIL();
  } catch (const SchemaError& e) {
    EXPECT_NE(std::string(e.what()).find("weight"), std::string::npos);
  }
}

TEST(FiniteGraph, UnreachablePairs) {
  const auto g = load_graph(R"({"root": 0, "vertices": [{"id": 0, "mu": 1}, {"id": 1, "mu": 1}], "edges": []})");
  EXPECT_THROW(distance(*g, vertex(0), vertex(1)), UnreachableError);
}

TEST(Balls, OneNeighborhood) {
  IntegerLine z;
  const std::vector<Vertex> k{vertex(0), vertex(5)};
  const auto n = one_neighborhood(z, k);
  EXPECT_EQ(n.size(), 6u);
  EXPECT_EQ(ball(z, vertex(0), 3).size(), 7u);
  const auto p = path_graph(10);
  EXPECT_EQ(ball(*p, vertex(0), 3).size(), 4u);
}

TEST(Balls, RadialStructureAuditedOnFiniteGraphs) {
  // A star around the root is equitable; a path rooted at an end is too.
  const auto p = path_graph(6);
  const auto rates = radial_structure(*p, 4);
  ASSERT_TRUE(rates.has_value());
  EXPECT_EQ((*rates)[0].up, 1.0);
  EXPECT_EQ((*rates)[2].down, 1.0);
  // The random graph is not equitable around its root.
  EXPECT_FALSE(radial_structure(*random_weighted_graph(20, 15, 1), 3).has_value());
}

TEST(Balls, TreeRadialRatesDeclared) {
  RegularTree t(3);
  const auto r0 = t.radial_rates(0);
  const auto r1 = t.radial_rates(1);
  EXPECT_EQ(r0->up, 3.0);
  EXPECT_EQ(r1->down, 1.0);
  EXPECT_EQ(r1->up, 2.0);
}

TEST(Families, ParseFamily) {
  EXPECT_EQ(parse_family("z").kind, GraphFamily::Kind::integer_line);
  EXPECT_EQ(parse_family("lattice:3").param, 3);
  EXPECT_EQ(parse_family("tree:3").kind, GraphFamily::Kind::tree);
  EXPECT_THROW(make_graph(parse_family("tree:1")), DomainError);
  EXPECT_THROW(parse_family("moebius"), DomainError);
}

TEST(Fixtures, RandomGraphIsSeedStable) {
  const auto a = random_weighted_graph(30, 20, 99);
  const auto b = random_weighted_graph(30, 20, 99);
  EXPECT_EQ(graph_to_json(*a), graph_to_json(*b));
  EXPECT_NE(graph_to_json(*a), graph_to_json(*random_weighted_graph(30, 20, 100)));
}

TEST(Examples, DegreesDistancesBalls) {
  const auto star = load_graph(R"({"root": 0, "vertices": [{"id": 0, "mu": 2}, {"id": 1, "mu": 1}, {"id": 2, "mu": 1},
      {"id": 3, "mu": 1}, {"id": 4, "mu": 1}], "edges": [{"u": 0, "v": 1, "w": 1}, {"u": 0, "v": 2, "w": 2},
      {"u": 0, "v": 3, "w": 3}]})");
  EXPECT_DOUBLE_EQ(degree(*star, vertex(0)), 3.0);
  EXPECT_EQ(degree(*star, vertex(4)), 0.0);
  EXPECT_THROW(degree(*star, vertex(9)), DomainError);

  IntegerLine z;
  EXPECT_EQ(distance(z, vertex(0), vertex(5)), 5);
  EXPECT_EQ(distance(z, vertex(3), vertex(3)), 0);
  const auto c6 = cycle_graph(6);
  EXPECT_EQ(distance(*c6, vertex(0), vertex(3)), 3);
  EXPECT_EQ(ball(z, vertex(0), 2), (std::vector<Vertex>{vertex(-2), vertex(-1), vertex(0), vertex(1), vertex(2)}));
  EXPECT_EQ(ball(z, vertex(7), 0), std::vector<Vertex>{vertex(7)});
  EXPECT_EQ(ball(RegularTree(3), vertex(0), 2).size(), 10u);
  EXPECT_EQ(one_neighborhood(z, std::vector<Vertex>{vertex(0)}),
            (std::vector<Vertex>{vertex(-1), vertex(0), vertex(1)}));
  EXPECT_TRUE(one_neighborhood(z, std::vector<Vertex>{}).empty());
}

TEST(Examples, K2FixtureHasUnitDegree) {
  const auto g = load_graph_file(fixture("k2.json"));
  for (Vertex v : g->vertices()) EXPECT_EQ(degree(*g, v), 1.0);
}
