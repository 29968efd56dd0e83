#include <gtest/gtest.h>

#include "fixtures.h"
#include "oracle.h"
#include "smcp/solver.h"

namespace {

smcp::SolverConfig quick(smcp::ScoreScheme scheme, std::uint64_t seed) {
  smcp::SolverConfig config;
  config.scheme = scheme;
  config.seed = seed;
  config.time_limit = 5.0;
  config.max_loops = 60;
  return config;
}

class AllSchemes : public ::testing::TestWithParam<smcp::ScoreScheme> {};

TEST_P(AllSchemes, SolvesT1) {
  const auto result = smcp::solve(fixtures::t1(), quick(GetParam(), 42));
  EXPECT_TRUE(result.feasible);
  EXPECT_EQ(result.objective, 8);
  EXPECT_EQ(result.incumbent, smcp::Solution::from_columns(4, std::vector<int>{1, 2}));
  EXPECT_FALSE(result.infeasible_signal);
  EXPECT_EQ(result.penalized, 8);
}

INSTANTIATE_TEST_SUITE_P(Schemes, AllSchemes,
                         ::testing::Values(smcp::ScoreScheme::Lagrangian,
                                           smcp::ScoreScheme::Normalized,
                                           smcp::ScoreScheme::Pseudo, smcp::ScoreScheme::None));

TEST(Solver, ReportedObjectiveMatchesReevaluation) {
  smcp::Rng rng(50);
  for (int trial = 0; trial < 20; ++trial) {
    const auto inst = fixtures::random_instance(rng);
    const auto result = smcp::solve(inst, quick(smcp::ScoreScheme::Pseudo, trial + 1));
    const auto data = inst.to_data();
    const auto bits = fixtures::bits(result.incumbent);
    EXPECT_EQ(result.objective, oracle::cost(data, bits));
    EXPECT_EQ(result.feasible, oracle::feasible(data, bits));
    EXPECT_EQ(result.penalized, oracle::penalized(data, bits, smcp::initial_weights(inst)));
    EXPECT_TRUE(oracle::gub_feasible(data, bits));
  }
}

TEST(Solver, TimelineImprovesMonotonically) {
  smcp::Rng rng(51);
  fixtures::RandomSpec spec;
  spec.min_cols = 30;
  const auto inst = fixtures::random_instance(rng, spec);
  const auto result = smcp::solve(inst, quick(smcp::ScoreScheme::Normalized, 3));
  ASSERT_FALSE(result.timeline.empty());
  for (std::size_t k = 1; k < result.timeline.size(); ++k) {
    EXPECT_GE(result.timeline[k].time, result.timeline[k - 1].time);
    EXPECT_LT(result.timeline[k].value, result.timeline[k - 1].value);
  }
  EXPECT_EQ(result.timeline.back().value, result.penalized);
}

TEST(Solver, LowerBoundIsValid) {
  smcp::Rng rng(52);
  fixtures::RandomSpec spec;
  spec.max_cols = 16;
  for (int trial = 0; trial < 15; ++trial) {
    const auto inst = fixtures::random_instance(rng, spec);
    const auto opt = oracle::brute_force_optimum(inst.to_data());
    if (!opt.feasible) continue;
    const auto result = smcp::solve(inst, quick(smcp::ScoreScheme::Lagrangian, 1));
    ASSERT_TRUE(result.has_lower_bound);
    EXPECT_LE(result.lower_bound, static_cast<double>(opt.cost) + 1e-6);
    EXPECT_GE(result.objective, opt.cost);
  }
}

TEST(Solver, SkipBoundUnderPseudo) {
  auto config = quick(smcp::ScoreScheme::Pseudo, 1);
  config.skip_bound = true;
  const auto result = smcp::solve(fixtures::t1(), config);
  EXPECT_FALSE(result.has_lower_bound);
  EXPECT_EQ(result.objective, 8);
}

TEST(Solver, InfeasibleInstanceIsSignalled) {
  // Rows 0 and 1 each need both columns of a cap-1 block.
  const auto inst =
      smcp::Instance::from_columns({1, 1}, {{0, 1}, {0, 1}}, {2, 1}, {{{0, 1}, 1}});
  const auto result = smcp::solve(inst, quick(smcp::ScoreScheme::Pseudo, 1));
  EXPECT_FALSE(result.feasible);
  EXPECT_TRUE(result.infeasible_signal);
  EXPECT_GT(result.penalized, static_cast<double>(inst.total_cost()));
}

TEST(Solver, LoopCapMakesRunsReproducible) {
  smcp::Rng rng(53);
  fixtures::RandomSpec spec;
  spec.min_cols = 30;
  const auto inst = fixtures::random_instance(rng, spec);
  auto config = quick(smcp::ScoreScheme::Pseudo, 9);
  config.stop_at_bound = false;
  const auto a = smcp::solve(inst, config);
  const auto b = smcp::solve(inst, config);
  EXPECT_EQ(a.loops, 60);
  EXPECT_EQ(a.incumbent, b.incumbent);
  EXPECT_EQ(a.wls_calls, b.wls_calls);
  ASSERT_EQ(a.timeline.size(), b.timeline.size());
  for (std::size_t k = 0; k < a.timeline.size(); ++k) {
    EXPECT_EQ(a.timeline[k].loop, b.timeline[k].loop);
    EXPECT_EQ(a.timeline[k].value, b.timeline[k].value);
  }
}

TEST(Solver, AblationSwitches) {
  auto config = quick(smcp::ScoreScheme::None, 4);
  config.neighborhood = smcp::Neighborhood::OneFlip;
  config.path_relinking = false;
  config.uniform_greedy = true;
  const auto result = smcp::solve(fixtures::t1(), config);
  EXPECT_TRUE(result.feasible);
  EXPECT_EQ(result.relink_fallbacks, 0);
}

TEST(Solver, NameParsing) {
  EXPECT_EQ(smcp::parse_score_scheme("normalized"), smcp::ScoreScheme::Normalized);
  EXPECT_EQ(smcp::parse_neighborhood("1flip"), smcp::Neighborhood::OneFlip);
  EXPECT_STREQ(smcp::to_string(smcp::ScoreScheme::None), "none");
  EXPECT_THROW(smcp::parse_score_scheme("greedy"), std::invalid_argument);
  EXPECT_THROW(smcp::parse_neighborhood("3flip"), std::invalid_argument);
}

}  // namespace
