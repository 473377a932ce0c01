#include <gtest/gtest.h>

#include "hyperdist/grafts.hpp"
#include "oracle_values.hpp"

using namespace hyperdist;
namespace ov = oracle_values;

namespace {

const GapRule kRule;

RootedHypergraph end_rooted_path(std::size_t len, std::size_t k) { return {loose_path(len, k).graph, 0}; }

// Root edge {0,1,2}; vertex 1 carries two pendant edges.
RootedHypergraph clustered_branch() { return {Hypergraph(7, {{0, 1, 2}, {1, 3, 4}, {1, 5, 6}}), 0}; }

RootedHypergraph two_branch_core(RootedHypergraph big, std::size_t k) {
  std::vector<RootedHypergraph> parts{std::move(big), hyperstar(1, k)};
  return glue_at_root(parts);
}

}  // namespace

TEST(PathShift, IncreasesOnSeveralHosts) {
  auto p = loose_path(2, 3);
  for (auto [s, t] : {std::pair{1, 1}, {2, 1}, {3, 2}}) {
    auto o = graft_path_shift(p.graph, p.u(1), s, t);
    EXPECT_EQ(o.check(kRule).verdict, Verdict::kPass) << s << "," << t << " gap " << o.gap();
  }
  auto star = hyperstar(2, 4);
  EXPECT_EQ(graft_path_shift(star.graph, 0, 2, 2).check(kRule).verdict, Verdict::kPass);
  EXPECT_THROW(graft_path_shift(p.graph, p.u(1), 1, 2), DomainError);
  EXPECT_THROW(graft_path_shift(Hypergraph(6, {{0, 1, 2}, {3, 4, 5}}), 0, 1, 1), DomainError);
}

TEST(TwoVertexShift, UniformHostAndRejections) {
  auto p = loose_path(2, 3);
  auto o = graft_two_vertex_shift(p.graph, p.u(0), *p.w(1), 2, 1);
  EXPECT_EQ(o.check(kRule).verdict, Verdict::kPass) << o.gap();
  // One edge only.
  auto single = loose_path(1, 3);
  EXPECT_THROW(graft_two_vertex_shift(single.graph, 0, 1, 1, 1), DomainError);
  // u of degree two.
  EXPECT_THROW(graft_two_vertex_shift(p.graph, p.u(1), p.u(0), 1, 1), DomainError);
}

TEST(NonUniform, TwoVertexCounterexample) {
  auto o = nonuniform_two_vertex_counterexample();
  EXPECT_TRUE(o.counterexample);
  EXPECT_NEAR(o.rho_before, ov::kTwoPathBefore, 1e-8);
  EXPECT_NEAR(o.rho_after, ov::kTwoPathAfter, 1e-8);
  auto c = o.check(kRule);
  EXPECT_EQ(c.verdict, Verdict::kPass);
  EXPECT_NE(c.detail.find("paper-confirmed-counterexample"), std::string::npos);
}

TEST(NonUniform, PublishedExamplesToTwoDecimals) {
  auto a = nonuniform_path_example();
  EXPECT_NEAR(perron(a.before).rho, a.published_before, 0.005);
  EXPECT_NEAR(perron(a.after).rho, a.published_after, 0.005);
  auto b = vertex_transfer_example();
  EXPECT_NEAR(perron(b.before).rho, ov::kCat3_5_3_1_2, 1e-9);
  EXPECT_NEAR(perron(b.after).rho, ov::kVertexTransfer, 1e-9);
  EXPECT_NEAR(perron(b.after).rho, b.published_after, 0.005);
  EXPECT_FALSE(uniformity(b.after).has_value());
}

TEST(StarShift, ExamplesAndPreconditions) {
  for (CaterpillarParams p : {CaterpillarParams{3, 5, 3, 0, 3}, CaterpillarParams{3, 6, 3, 0, 2}}) {
    auto o = star_shift(p);
    EXPECT_EQ(o.check(kRule).verdict, Verdict::kPass) << o.gap();
  }
  EXPECT_NEAR(star_shift({3, 5, 3, 0, 3}).rho_after, ov::kCat3_5_3_1_2, 1e-9);
  EXPECT_THROW(star_shift({3, 6, 3, 1, 2}), DomainError);  // a + 2 > b
  EXPECT_THROW(star_shift({3, 4, 3, 0, 3}), DomainError);  // a + b + 2 > m*
}

TEST(StarShift, IteratesToBalancedSplit) {
  CaterpillarParams p{3, 9, 4, 0, 5};
  double last = perron(caterpillar(p).graph).rho;
  while (p.a + 2 <= p.b) {
    auto o = star_shift(p);
    EXPECT_GT(o.rho_after, last);
    last = o.rho_after;
    ++p.a;
    --p.b;
  }
  EXPECT_EQ(p.a, 2u);
  EXPECT_EQ(p.b, 3u);
}

TEST(GcShift, ThreeCases) {
  GcParams one{3, 2, 2, 1, end_rooted_path(2, 3)};
  EXPECT_EQ(classify_gc(one), GcCase::kSingleBranch);
  EXPECT_NEAR(gc_shift(one).rho_before, ov::kGc3_2_2_1_Path2, 1e-9);

  GcParams two{3, 3, 2, 2, two_branch_core(end_rooted_path(2, 3), 3)};
  EXPECT_EQ(classify_gc(two), GcCase::kLoosePathBranch);

  GcParams three{3, 2, 2, 2, two_branch_core(clustered_branch(), 3)};
  EXPECT_EQ(classify_gc(three), GcCase::kPendantCluster);

  for (const auto& p : {one, two, three}) {
    auto o = gc_shift(p);
    EXPECT_EQ(o.check(kRule).verdict, Verdict::kPass) << o.note << " gap " << o.gap();
  }

  GcParams short_t{3, 2, 1, 1, end_rooted_path(2, 3)};
  EXPECT_THROW(classify_gc(short_t), DomainError);
  GcParams all_single{3, 2, 2, 1, hyperstar(1, 3)};
  EXPECT_THROW(classify_gc(all_single), DomainError);
}

TEST(Facts, OrderingsHold) {
  for (CaterpillarParams p : {CaterpillarParams{3, 8, 3, 0, 2}, CaterpillarParams{3, 9, 3, 1, 3},
                              CaterpillarParams{2, 8, 4, 0, 3}}) {
    auto rep = verify_facts(p, kRule);
    EXPECT_EQ(rep.overall(), Verdict::kPass) << to_json(rep).dump();
  }
  EXPECT_THROW(verify_facts({3, 6, 3, 1, 1}, kRule), DomainError);
}

TEST(Lem6, BalanceInequalities) {
  for (std::size_t s = 2; s <= 4; ++s) {
    GcParams p{3, s, 2, 1, end_rooted_path(2, 3)};
    auto rep = verify_lem6(p, kRule);
    EXPECT_EQ(rep.overall(), Verdict::kPass) << to_json(rep).dump();
  }
  EXPECT_THROW(verify_lem6({3, 2, 1, 1, end_rooted_path(2, 3)}, kRule), DomainError);
}

TEST(SignChain, NeverFailsOnCaterpillars) {
  auto h = caterpillar({3, 7, 3, 1, 1});
  auto rep = verify_sign_chain(h, 4, 3, 1, kRule);
  EXPECT_NE(rep.overall(), Verdict::kFail) << to_json(rep).dump();
  EXPECT_THROW(verify_sign_chain(h, 6, 3, 1, kRule), DomainError);
  EXPECT_THROW(verify_sign_chain(h, 5, 4, 3, kRule), DomainError);
}

TEST(Alem, AdjacentPendantVertices) {
  auto host = loose_path(1, 3);
  auto rep = verify_alem(host.graph, 0, 1, hyperstar(1, 3), hyperstar(1, 3), kRule, 1e-10);
  EXPECT_EQ(rep.overall(), Verdict::kPass) << to_json(rep).dump();
  EXPECT_THROW(verify_alem(host.graph, 0, 0, hyperstar(1, 3), hyperstar(1, 3), kRule, 1e-10), DomainError);
  EXPECT_THROW(verify_alem(host.graph, 0, 1, trivial_rooted(), hyperstar(1, 3), kRule, 1e-10), DomainError);
}

TEST(EdgeDegreeAudit, Counts) {
  EXPECT_EQ(verify_edge_degree_bound(caterpillar({3, 5, 3, 1, 2}).graph).max_count, 2u);
  EXPECT_EQ(verify_edge_degree_bound(hyperstar(3, 3).graph).max_count, 1u);
  Hypergraph busy(9, {{0, 1, 2}, {0, 3, 4}, {1, 5, 6}, {2, 7, 8}});
  auto audit = verify_edge_degree_bound(busy);
  EXPECT_EQ(audit.max_count, 3u);
  EXPECT_EQ(audit.worst_edge, 0u);
  EXPECT_EQ(audit.report.verdict, Verdict::kFail);
}

TEST(Grid, ParseConfig) {
  auto g = parse_grid("k = 3\nm_star = 4..6, 8  # comment\n\n", default_grid("lem5"));
  EXPECT_EQ(g.k, std::vector<std::size_t>{3});
  EXPECT_EQ(g.m_star, (std::vector<std::size_t>{4, 5, 6, 8}));
  EXPECT_THROW(parse_grid("colour = 3", {}), DomainError);
  EXPECT_THROW(parse_grid("k = 5..2", {}), DomainError);
  EXPECT_THROW(parse_grid("k 3", {}), DomainError);
}

TEST(Sweep, SmallGridsPassAndAreOrdered) {
  SweepGrid g;
  g.k = {3};
  g.m_star = {6, 7};
  g.delta = {3};
  for (const std::string target : {"lem5", "fact1", "graft1", "eigen-identities"}) {
    auto reps = run_sweep(target, g);
    ASSERT_FALSE(reps.empty()) << target;
    for (const auto& r : reps) EXPECT_NE(r.overall(), Verdict::kFail) << to_json(r).dump();
    EXPECT_EQ(to_jsonl(reps), to_jsonl(run_sweep(target, g)));
  }
  EXPECT_THROW(run_sweep("nope", g), DomainError);
}
