#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "fixtures.h"
#include "smcp/reduction.h"
#include "smcp/relaxation.h"

namespace {

using smcp::Solution;

Solution t1_opt() { return Solution::from_columns(4, std::vector<int>{1, 2}); }

TEST(Reduction, FixProbabilities) {
  EXPECT_EQ(smcp::fix_probabilities(std::vector<double>{-1, 1}), (std::vector<double>{1, 0}));
  EXPECT_EQ(smcp::fix_probabilities(std::vector<double>{2, 2, 2, 2}),
            (std::vector<double>{0.25, 0.25, 0.25, 0.25}));
  const auto p = smcp::fix_probabilities(std::vector<double>{0, 1, 3});
  EXPECT_DOUBLE_EQ(p[0], 3.0 / 5.0);
  EXPECT_DOUBLE_EQ(p[1], 2.0 / 5.0);
  EXPECT_DOUBLE_EQ(p[2], 0.0);
}

TEST(Reduction, FixVariablesOnT1) {
  const auto inst = fixtures::t1();
  smcp::Rng rng(42);
  const auto fixed =
      smcp::fix_variables(inst, t1_opt(), t1_opt(), std::vector<double>{2, 2, 2}, rng);
  EXPECT_EQ(fixed.columns, (std::vector<int>{1}));
  EXPECT_EQ(fixed.satisfied_rows, 1);
  EXPECT_FALSE(fixed.exhausted);
  EXPECT_EQ(fixed.fixed_cost, 3);
  EXPECT_EQ(fixed.multipliers, (std::vector<double>{2, 0, 2}));
  EXPECT_EQ(fixed.absorbed_demand, (std::vector<int>{0, 1, 1}));
  EXPECT_EQ(fixed.absorbed_cap, (std::vector<int>{1, 0}));
}

TEST(Reduction, FixVariablesOnlyFromCommonSupport) {
  smcp::Rng rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    const auto inst = fixtures::random_instance(rng);
    const auto a = fixtures::random_gub_solution(rng, inst, 0.6);
    const auto b = fixtures::random_gub_solution(rng, inst, 0.6);
    std::vector<double> u(inst.num_rows(), 1.0);
    const auto fixed = smcp::fix_variables(inst, a, b, u, rng);
    auto sorted = fixed.columns;
    std::sort(sorted.begin(), sorted.end());
    EXPECT_EQ(std::adjacent_find(sorted.begin(), sorted.end()), sorted.end());
    for (int j : fixed.columns) EXPECT_TRUE(a[j] && b[j]);
    const int target = static_cast<int>(std::ceil(0.2 * inst.num_rows() - 1e-12));
    EXPECT_TRUE(fixed.exhausted || fixed.satisfied_rows >= target);
    // Stops at the first draw that reaches the target.
    if (!fixed.exhausted && !fixed.columns.empty()) {
      std::vector<int> absorbed(inst.num_rows(), 0);
      for (std::size_t k = 0; k + 1 < fixed.columns.size(); ++k) {
        for (int i : inst.rows_of(fixed.columns[k])) ++absorbed[i];
      }
      int before = 0;
      for (int i = 0; i < inst.num_rows(); ++i) before += absorbed[i] >= inst.demand(i);
      EXPECT_LT(before, target);
    }
  }
}

TEST(Reduction, ApplyAndRemoveFixing) {
  const auto inst = fixtures::t1();
  smcp::Rng rng(42);
  const auto fixed =
      smcp::fix_variables(inst, t1_opt(), t1_opt(), std::vector<double>{2, 2, 2}, rng);
  const auto reduced = smcp::apply_fixing(inst, fixed);
  EXPECT_EQ(std::vector<int>(reduced.demands().begin(), reduced.demands().end()),
            (std::vector<int>{1, 0, 1}));
  EXPECT_EQ(std::vector<int>(reduced.caps().begin(), reduced.caps().end()),
            (std::vector<int>{0, 2}));
  EXPECT_EQ(smcp::remove_fixing(reduced, fixed), inst);
  EXPECT_EQ(smcp::free_mask(4, fixed), (std::vector<std::uint8_t>{1, 0, 1, 1}));
}

TEST(Reduction, NormalizedScoresExample) {
  const auto inst = fixtures::t1();
  const auto s = smcp::normalized_scores(inst, std::vector<double>{3, 3, 3});
  EXPECT_EQ(s.kind, smcp::ScoreKind::Normalized);
  EXPECT_EQ(s.score, (std::vector<double>{0, -1, -1, -2}));
  EXPECT_EQ(s.threshold[0], -2);
}

TEST(Reduction, NormalizedScoresNeverExceedLagrangianCosts) {
  smcp::Rng rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const auto inst = fixtures::random_instance(rng);
    std::vector<double> u(inst.num_rows());
    for (double& v : u) v = rng.uniform01() * 20;
    const auto c = smcp::lagrangian_costs(inst, u);
    const auto rho = smcp::normalized_scores(inst, u);
    for (int h = 0; h < inst.num_blocks(); ++h) {
      for (int j : inst.block_columns(h)) {
        if (rho.threshold[h] < 0) {
          EXPECT_GE(rho.score[j], c[j]);
        } else {
          EXPECT_EQ(rho.score[j], c[j]);
        }
      }
    }
  }
}

// Singleton blocks with cap 1 leave every column its Lagrangian cost.
TEST(Reduction, NormalizedEqualsLagrangianInScpMode) {
  const auto inst = smcp::Instance::scp({3, 4, 5}, {{0, 1}, {1}, {0}}, 2);
  const std::vector<double> u{4, 6};
  EXPECT_EQ(smcp::normalized_scores(inst, u).score, smcp::lagrangian_costs(inst, u));
}

TEST(Reduction, NormalizedIgnoresFixedColumns) {
  const auto inst = fixtures::t1();
  const std::vector<std::uint8_t> free{1, 0, 1, 1};
  const auto s = smcp::normalized_scores(inst, std::vector<double>{3, 3, 3}, free);
  // Block 0 keeps one free column within its cap, so no shift.
  EXPECT_EQ(s.score[0], -2);
}

TEST(Reduction, PseudoScores) {
  const auto s = smcp::pseudo_scores(fixtures::t1(), std::vector<double>{14, 14, 14});
  EXPECT_EQ(s.score, (std::vector<double>{-24, -25, -23, -13}));
}

TEST(Reduction, CoreExample) {
  const auto inst = fixtures::t1();
  const std::vector<double> cost{4, 3, 5, 1};
  const auto core = smcp::build_core(inst, cost, t1_opt(), t1_opt());
  EXPECT_EQ(core.size, 4);
  const auto small = smcp::build_core(inst, cost, Solution::from_columns(4, std::vector<int>{3}),
                                      Solution::from_columns(4, std::vector<int>{3}), {}, 0);
  EXPECT_EQ(small.member, (std::vector<std::uint8_t>{1, 1, 0, 1}));
  EXPECT_EQ(small.size, 3);
}

TEST(Reduction, CoreContainsSupportsAndOnlyFreeColumns) {
  smcp::Rng rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    const auto inst = fixtures::random_instance(rng);
    const auto a = fixtures::random_gub_solution(rng, inst, 0.2);
    const auto b = fixtures::random_gub_solution(rng, inst, 0.2);
    std::vector<std::uint8_t> free(inst.num_cols(), 1);
    for (auto& f : free) f = rng.uniform01() < 0.8;
    std::vector<double> score(inst.num_cols());
    for (double& s : score) s = rng.uniform01();
    const auto core = smcp::build_core(inst, score, a, b, free, 1);
    int size = 0;
    for (int j = 0; j < inst.num_cols(); ++j) {
      size += core.member[j];
      if (!free[j]) {
        EXPECT_FALSE(core.member[j]);
      }
      if (free[j] && (a[j] || b[j])) {
        EXPECT_TRUE(core.member[j]);
      }
    }
    EXPECT_EQ(size, core.size);
  }
}

}  // namespace
