#include <gtest/gtest.h>

#include "hyperdist/extremal.hpp"
#include "hyperdist/spectral.hpp"
#include "oracle.hpp"
#include "oracle_values.hpp"

using namespace hyperdist;
namespace ov = oracle_values;

namespace {

std::set<std::string> codes_of(const std::vector<Hypergraph>& gs) {
  std::set<std::string> out;
  for (const auto& g : gs) out.insert(canonical_code(g).bytes);
  return out;
}

}  // namespace

TEST(Enumeration, ClassCountsMatchOracleTables) {
  for (const auto* table : {&ov::kClassesK2, &ov::kClassesK3, &ov::kClassesK4}) {
    std::size_t k = table == &ov::kClassesK2 ? 2 : table == &ov::kClassesK3 ? 3 : 4;
    for (auto [m, count] : *table) EXPECT_EQ(enumerate_hypertrees(m, k).size(), count) << "k=" << k << " m=" << m;
  }
}

TEST(Enumeration, MatchesLabeledGenerationOracle) {
  for (auto [m, k] : {std::pair{3, 2}, {4, 2}, {5, 2}, {6, 2}, {2, 3}, {3, 3}, {4, 3}}) {
    auto fast = enumerate_hypertrees(m, k);
    auto slow = oracle::labeled_hypertree_classes(m, k);
    EXPECT_EQ(fast.size(), slow.size()) << "k=" << k << " m=" << m;
    EXPECT_EQ(codes_of(fast), codes_of(slow)) << "k=" << k << " m=" << m;
  }
}

TEST(Enumeration, EveryClassIsAUniformHypertreeSortedByCode) {
  auto all = enumerate_hypertrees(7, 3);
  for (std::size_t i = 0; i < all.size(); ++i) {
    ASSERT_TRUE(is_hypertree(all[i]));
    ASSERT_TRUE(is_k_uniform(all[i], 3));
    ASSERT_EQ(all[i].edge_count(), 7u);
    if (i) ASSERT_LT(canonical_code(all[i - 1]), canonical_code(all[i]));
  }
}

TEST(Enumeration, BudgetRefusal) {
  EnumerationOptions tiny{10};
  try {
    enumerate_hypertrees(9, 3, tiny);
    FAIL();
  } catch (const BudgetError& e) {
    EXPECT_GT(e.estimate(), 10.0);
  }
  EXPECT_GT(estimate_classes(20, 3), estimate_classes(10, 3));
  EXPECT_THROW(enumerate_hypertrees(0, 3), DomainError);
}

TEST(FamilyFilter, TreeFamilySizes) {
  for (auto [key, count] : ov::kTreeFamilySizes) {
    auto [m, n] = key;
    auto fam = family_filter(enumerate_hypertrees(m, 2), {2, m, 3, n});
    EXPECT_EQ(fam.size(), count) << "m=" << m << " n=" << n;
  }
}

TEST(FamilyKey, PredictionAndFeasibility) {
  FamilyKey key{3, 8, 3, 3};
  EXPECT_EQ(key.m_star(), 5u);
  auto p = key.predicted();
  ASSERT_TRUE(p.has_value());
  EXPECT_EQ(p->a, 1u);
  EXPECT_EQ(p->b, 2u);
  EXPECT_FALSE((FamilyKey{3, 4, 3, 4}).predicted().has_value());
}

TEST(Extremal, EightEdgeFamilyArgmax) {
  auto r = verify_thm2({3, 8, 3, 3});
  EXPECT_TRUE(r.verdict) << to_json(r).dump();
  ASSERT_EQ(r.argmax_graphs.size(), 1u);
  EXPECT_TRUE(is_isomorphic(r.argmax_graphs[0], caterpillar({3, 5, 3, 1, 2}).graph));
  EXPECT_NEAR(r.max_rho, ov::kCat3_5_3_1_2, 1e-9);
  EXPECT_EQ(argmax_edge_census(r).verdict, Verdict::kPass);
}

TEST(Extremal, SharedPopulationAndCaterpillarScope) {
  auto pop = enumerate_hypertrees(7, 2);
  for (std::size_t n = 2; n <= 3; ++n) {
    FamilyKey key{2, 7, 3, n};
    auto full = verify_thm2(key, &pop);
    auto cat = verify_caterpillar_extremal(key, &pop);
    EXPECT_TRUE(full.verdict) << to_json(full).dump();
    EXPECT_TRUE(cat.verdict) << to_json(cat).dump();
    EXPECT_EQ(cat.scope, "caterpillars");
    EXPECT_LE(cat.population, full.population);
    EXPECT_EQ(full.argmax, cat.argmax);
  }
}

TEST(Extremal, ArgmaxTiesAndEmpty) {
  auto p = loose_path(3, 3).graph;
  auto r = argmax_rho({p, p}, std::nullopt);
  EXPECT_EQ(r.argmax.size(), 2u);
  EXPECT_NE(r.note.find("tie"), std::string::npos);
  EXPECT_THROW(argmax_rho({}, std::nullopt), DomainError);
  EXPECT_FALSE(argmax_rho({p, hyperstar(3, 3).graph}, hyperstar(3, 3).graph).verdict);
}

TEST(DeltaMonotonicity, StrictDecrease) {
  auto r = delta_monotonicity(10, 3, 2, 5);
  EXPECT_EQ(r.check.verdict, Verdict::kPass) << to_json(r).dump();
  std::vector<double> rhos;
  for (const auto& p : r.points) {
    if (p.feasible) rhos.push_back(p.rho);
  }
  ASSERT_GE(rhos.size(), 2u);
  for (std::size_t i = 1; i < rhos.size(); ++i) EXPECT_LT(rhos[i], rhos[i - 1]);
  EXPECT_THROW(delta_monotonicity(10, 3, 5, 5), DomainError);
}
