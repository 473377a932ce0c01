#include <gtest/gtest.h>

#include <algorithm>

#include "hyperdist/families.hpp"
#include "hyperdist/family_spec.hpp"
#include "hyperdist/spectral.hpp"

using namespace hyperdist;

namespace {

std::size_t count_degree(const Hypergraph& g, std::size_t d) {
  auto deg = g.degrees();
  return std::count(deg.begin(), deg.end(), d);
}

}  // namespace

TEST(Hyperstar, ShapeAndTrivial) {
  auto s = hyperstar(2, 3);
  EXPECT_EQ(s.graph.vertex_count(), 5u);
  EXPECT_EQ(s.graph.degrees(), std::vector<std::size_t>({2, 1, 1, 1, 1}));
  EXPECT_TRUE(hyperstar(0, 4).trivial());
  EXPECT_EQ(hyperstar(0, 4).graph.vertex_count(), 1u);
}

TEST(LoosePath, ShapeAndDistances) {
  auto p = loose_path(1, 3);
  EXPECT_EQ(p.graph.edges(), std::vector<Edge>({{0, 1, 2}}));
  DistanceMatrix d = distance_matrix(loose_path(2, 2).graph);
  EXPECT_EQ(d(0, 2), 2u);
  EXPECT_EQ(d(0, 1), 1u);
  EXPECT_EQ(d(1, 2), 1u);
  auto q = loose_path(5, 3);
  EXPECT_EQ(q.graph.vertex_count(), 11u);
  for (std::size_t i = 1; i < 5; ++i) EXPECT_EQ(degree(q.graph, q.u(i)), 2u);
}

TEST(RootedProduct, AttachAndIdentity) {
  auto p = loose_path(2, 3);
  std::vector<Vertex> at{p.u(1)};
  std::vector<RootedHypergraph> star{hyperstar(1, 3)};
  Hypergraph g = rooted_product(p.graph, at, star);
  EXPECT_TRUE(is_hypertree(g));
  EXPECT_EQ(count_degree(g, 3), 1u);

  std::vector<Vertex> all{0, 1, 2};
  std::vector<RootedHypergraph> trivial(3, trivial_rooted());
  EXPECT_EQ(rooted_product(p.graph, all, trivial), p.graph);
  EXPECT_THROW(rooted_product(p.graph, all, star), DomainError);
}

TEST(Caterpillar, EightEdgeInstanceCensus) {
  auto c = caterpillar({3, 5, 3, 1, 2});
  EXPECT_EQ(c.graph.edge_count(), 8u);
  EXPECT_EQ(c.graph.vertex_count(), 17u);
  EXPECT_EQ(count_degree(c.graph, 3), 3u);
  EXPECT_EQ(caterpillar({3, 5, 4, 0, 0}).graph, loose_path(5, 3).graph);
  EXPECT_TRUE(is_isomorphic(caterpillar({4, 6, 4, 1, 3}).graph, caterpillar({4, 6, 4, 3, 1}).graph));
  EXPECT_THROW(caterpillar({3, 3, 3, 1, 2}), DomainError);
}

TEST(Caterpillar, MembershipCensusOverGrid) {
  for (std::size_t k = 2; k <= 4; ++k) {
    for (std::size_t ms = 2; ms <= 7; ++ms) {
      for (std::size_t delta = 3; delta <= 5; ++delta) {
        for (std::size_t a = 0; a < ms; ++a) {
          for (std::size_t b = 0; a + b < ms; ++b) {
            CaterpillarParams p{k, ms, delta, a, b};
            auto c = caterpillar(p);
            ASSERT_EQ(c.graph.edge_count(), p.edge_count());
            ASSERT_EQ(c.graph.vertex_count(), p.vertex_count());
            ASSERT_TRUE(is_hypertree(c.graph));
            ASSERT_EQ(count_degree(c.graph, delta), a + b);
            ASSERT_EQ(max_degree(c.graph), a + b > 0 ? delta : (ms > 1 ? 2u : 1u));
          }
        }
      }
    }
  }
}

TEST(Caterpillar, DeterministicAndTwoPathForm) {
  CaterpillarParams p{3, 7, 4, 1, 2};
  EXPECT_EQ(caterpillar(p).graph, caterpillar(p).graph);
  // C_k(m*, delta, a, b) = H_{u,v}(a+1, b+1, S_{delta-2}) on a middle path.
  auto mid = loose_path(p.m_star - p.a - p.b - 2, p.k);
  Hypergraph h = attach_two_paths(mid.graph, mid.u(0), mid.u(mid.length()), p.a + 1, p.b + 1,
                                  hyperstar(p.delta - 2, p.k), p.k);
  EXPECT_TRUE(is_isomorphic(h, caterpillar(p).graph));
}

TEST(AttachTwoPaths, SingleEdgeHost) {
  Hypergraph e = loose_path(1, 3).graph;
  Hypergraph h = attach_two_paths(e, 0, 0, 1, 1, trivial_rooted(), 3);
  EXPECT_EQ(h.edge_count(), 3u);
  EXPECT_TRUE(is_isomorphic(h, hyperstar(3, 3).graph));
  Hypergraph none = attach_two_paths(e, 0, 1, 0, 0, trivial_rooted(), 3);
  EXPECT_EQ(none, e);
}

TEST(Gc, DegreesAndCounts) {
  RootedHypergraph core{loose_path(1, 3).graph, 0};
  auto g = g_c({3, 2, 2, 1, core});
  EXPECT_EQ(g.graph.edge_count(), 7u);  // 4 spine, 2 star, 1 core
  EXPECT_EQ(g.graph.vertex_count(), 7u * 2 + 1);
  for (std::size_t i = 1; i < 4; ++i) {
    std::size_t expect = i == 2 ? 2 + degree(core.graph, core.root) : 1 + 2;
    EXPECT_EQ(degree(g.graph, g.u(i)), expect) << i;
  }
  RootedHypergraph bad{loose_path(1, 2).graph, 0};
  EXPECT_THROW(g_c({3, 2, 2, 1, bad}), DomainError);
}

TEST(Gc, GlueAndBranchesRoundTrip) {
  std::vector<RootedHypergraph> parts{{loose_path(2, 3).graph, 0}, {loose_path(1, 3).graph, 0}};
  RootedHypergraph core = glue_at_root(parts);
  EXPECT_EQ(degree(core.graph, core.root), 2u);
  auto branches = root_branches(core);
  ASSERT_EQ(branches.size(), 2u);
  EXPECT_EQ(branches[0].graph.edge_count() + branches[1].graph.edge_count(), 3u);
}

TEST(SpineSplit, LoosePathByHand) {
  auto p = loose_path(3, 3);
  auto s = spine_split(p, 1);
  std::vector<Vertex> e1 = p.graph.edge(p.e(1));
  EXPECT_EQ(s.upper, e1);
  std::vector<Vertex> lower;
  for (std::size_t i : {2u, 3u}) {
    for (Vertex v : p.graph.edge(p.e(i))) lower.push_back(v);
  }
  std::sort(lower.begin(), lower.end());
  lower.erase(std::unique(lower.begin(), lower.end()), lower.end());
  EXPECT_EQ(s.lower, lower);
  auto s0 = spine_split(p, 0);
  EXPECT_EQ(s0.upper, std::vector<Vertex>{p.u(0)});
  EXPECT_THROW(spine_split(p, 4), DomainError);
}

TEST(SpineSplit, PartitionAudit) {
  auto c = caterpillar({3, 7, 3, 2, 3});
  const std::size_t n = c.graph.vertex_count();
  for (std::size_t i = 0; i < c.length(); ++i) {
    auto a = spine_split(c, i), b = spine_split(c, i + 1);
    // H^{u_i} and H_{u_{i+1}} with the interior of e_{i+1} cover V(H) disjointly.
    std::vector<int> seen(n, 0);
    for (Vertex v : a.upper) ++seen[v];
    for (Vertex v : b.lower) ++seen[v];
    for (Vertex v : c.graph.edge(c.e(i + 1))) {
      if (v != c.u(i) && v != c.u(i + 1)) ++seen[v];
    }
    for (std::size_t v = 0; v < n; ++v) ASSERT_EQ(seen[v], 1) << "i=" << i << " v=" << v;
  }
}

TEST(FamilySpec, ParsesEveryForm) {
  EXPECT_EQ(parse_family_spec("star:4,2").graph.vertex_count(), 5u);
  EXPECT_EQ(parse_family_spec("path:5,3").graph, loose_path(5, 3).graph);
  auto c = parse_family_spec("cat:3,5,3,1,2");
  EXPECT_EQ(c.graph.vertex_count(), 17u);
  EXPECT_EQ(c.graph.edge_count(), 8u);
  ASSERT_TRUE(c.spine.has_value());
}

TEST(FamilySpec, ErrorsCarryPositions) {
  try {
    parse_family_spec("cat:3,5,x,1,2");
    FAIL();
  } catch (const SpecParseError& e) {
    EXPECT_EQ(e.position(), 8u);
  }
  try {
    parse_family_spec("path:5");
    FAIL();
  } catch (const SpecParseError& e) {
    EXPECT_EQ(e.position(), 6u);
  }
  EXPECT_THROW(parse_family_spec("wheel:3,3"), SpecParseError);
  EXPECT_THROW(parse_family_spec("cat:3,3,3,1,2"), DomainError);
  EXPECT_THROW(parse_family_spec("gc:3,2,2,1,core=/nonexistent"), DomainError);
}
