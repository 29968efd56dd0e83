#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "fixtures.h"
#include "oracle.h"
#include "smcp/weighting.h"

namespace {

using smcp::SearchState;
using smcp::Solution;

TEST(Weighting, QuantumIsPowerOfTwo) {
  EXPECT_EQ(smcp::weight_quantum(fixtures::t1()), 0x1.0p-16);
  // Big costs push the quantum up so that the partial sums stay below 2^52 q.
  const auto big = smcp::Instance::from_columns({1'000'000'000'000LL}, {{0}}, {1}, {{{0}, 1}});
  const double q = smcp::weight_quantum(big);
  int exponent = 0;
  EXPECT_EQ(std::frexp(q, &exponent), 0.5);
  EXPECT_LT((1e12 + 1) / q, 0x1.0p52);
  EXPECT_GE((1e12 + 1) / (q / 2), 0x1.0p52);
}

TEST(Weighting, Quantize) {
  const double q = 0.25;
  EXPECT_EQ(smcp::quantize_down(1.3, q), 1.25);
  EXPECT_EQ(smcp::quantize_up(1.3, q), 1.5);
  EXPECT_EQ(smcp::quantize_down(0.01, q), 0.25);
  EXPECT_EQ(smcp::quantize_up(10 * 1.1, 0x1.0p-16), 11.0);
}

TEST(Weighting, IncreaseExample) {
  std::vector<double> w{10, 10, 10};
  smcp::increase_weights(w, std::vector<double>{14, 14, 14}, std::vector<int>{2, 0, 1}, 0.2,
                         0x1.0p-16);
  EXPECT_EQ(w, (std::vector<double>{12, 10, 11}));
}

TEST(Weighting, IncreaseCapsAtInitialWeights) {
  std::vector<double> w{14, 13, 5};
  smcp::increase_weights(w, std::vector<double>{14, 14, 14}, std::vector<int>{1, 1, 1}, 0.2,
                         0x1.0p-16);
  EXPECT_EQ(w, (std::vector<double>{14, 14, 6}));
}

TEST(Weighting, IncreaseWithoutViolationIsNoop) {
  std::vector<double> w{3, 4};
  smcp::increase_weights(w, std::vector<double>{9, 9}, std::vector<int>{0, 0}, 0.2, 1.0);
  EXPECT_EQ(w, (std::vector<double>{3, 4}));
}

TEST(Weighting, DecreaseFactorSingleColumn) {
  const auto inst = fixtures::t1();
  const auto w = smcp::initial_weights(inst);
  SearchState state(inst, w, w, Solution::from_columns(4, std::vector<int>{1}));
  ASSERT_EQ(state.dp_down(1), 28);
  const double eta = smcp::decrease_factor(state, 0.15);
  EXPECT_NEAR(eta, 1.0 - 3.0 / 28.0, 1e-8);
  EXPECT_GT(eta, 1.0 - 3.0 / 28.0);
  EXPECT_LT(eta, 1.0);
  auto scaled = w;
  smcp::decrease_weights(scaled, eta, smcp::weight_quantum(inst));
  state.set_weights(scaled);
  EXPECT_LT(state.delta_down(1), 0);
}

TEST(Weighting, DecreaseUnneededWhenAlreadyDroppable) {
  const auto inst = fixtures::t1();
  const std::vector<double> tiny{0.5, 0.5, 0.5};
  SearchState state(inst, tiny, tiny, Solution::from_columns(4, std::vector<int>{0, 2}));
  EXPECT_EQ(smcp::decrease_factor(state, 0.15), 0.0);
  auto w = tiny;
  smcp::decrease_weights(w, 0.0, 0x1.0p-16);
  EXPECT_EQ(w, tiny);
}

TEST(Weighting, DecreaseFactorOrderStatistic) {
  // Twenty selected columns, each alone on a row with b = 1, so dp_down(j) = w_j.
  const int n = 20;
  smcp::Rng rng(4);
  std::vector<smcp::Cost> cost(n);
  std::vector<std::vector<int>> rows(n);
  std::vector<smcp::Block> blocks;
  std::vector<double> w(n);
  for (int j = 0; j < n; ++j) {
    cost[j] = rng.between(1, 30);
    rows[j] = {j};
    blocks.push_back({{j}, 1});
    w[j] = static_cast<double>(rng.between(40, 400));
  }
  const auto inst = smcp::Instance::from_columns(cost, rows, std::vector<int>(n, 1), blocks);
  std::vector<int> all(n);
  for (int j = 0; j < n; ++j) all[j] = j;
  SearchState state(inst, w, w, Solution::from_columns(n, all));
  std::vector<double> ratio;
  for (int j = 0; j < n; ++j) ratio.push_back(1.0 - cost[j] / w[j]);
  std::sort(ratio.begin(), ratio.end());
  const double eta = smcp::decrease_factor(state, 0.15);
  EXPECT_NEAR(eta, ratio[2], 1e-8);
  EXPECT_GT(eta, ratio[2]);

  auto scaled = w;
  smcp::decrease_weights(scaled, eta, smcp::weight_quantum(inst));
  state.set_weights(scaled);
  int negative = 0;
  for (int j = 0; j < n; ++j) negative += state.delta_down(j) < 0 ? 1 : 0;
  EXPECT_GE(negative, 3);
}

TEST(Weighting, WlsSolvesT1) {
  const auto inst = fixtures::t1();
  const auto w_bar = smcp::initial_weights(inst);
  const auto result = smcp::wls(inst, Solution(4), w_bar);
  EXPECT_EQ(result.best, Solution::from_columns(4, std::vector<int>{1, 2}));
  EXPECT_EQ(result.best_value, 8);
  EXPECT_GE(result.calls, 50);
}

TEST(Weighting, WlsSignalsInfeasibility) {
  // Row 1 needs two columns but only one covers it.
  const auto inst = smcp::Instance::from_columns({2, 3}, {{0, 1}, {0}}, {1, 2}, {{{0, 1}, 2}});
  const auto w_bar = smcp::initial_weights(inst);
  const auto result = smcp::wls(inst, Solution(2), w_bar);
  EXPECT_GT(result.best_value, static_cast<double>(inst.total_cost()));
}

TEST(Weighting, WlsKeepsWeightsInRangeAndBestConsistent) {
  smcp::Rng rng(41);
  for (int trial = 0; trial < 25; ++trial) {
    const auto inst = fixtures::random_instance(rng);
    const auto w_bar = smcp::initial_weights(inst);
    smcp::WlsParams params;
    params.max_calls = 200;
    const auto result = smcp::wls(inst, Solution(inst.num_cols()), w_bar, {}, params);
    for (std::size_t i = 0; i < w_bar.size(); ++i) {
      EXPECT_GT(result.weights[i], 0.0);
      EXPECT_LE(result.weights[i], w_bar[i]);
    }
    EXPECT_TRUE(smcp::is_gub_feasible(inst, result.best));
    EXPECT_EQ(oracle::penalized(inst.to_data(), fixtures::bits(result.best), w_bar),
              result.best_value);
    EXPECT_LE(result.calls, 200);
  }
}

TEST(Weighting, WlsRespectsActiveMask) {
  const auto inst = fixtures::t1();
  const auto w_bar = smcp::initial_weights(inst);
  const std::vector<std::uint8_t> active{1, 0, 1, 1};
  const auto result = smcp::wls(inst, Solution(4), w_bar, active);
  EXPECT_FALSE(result.best[1]);
  EXPECT_FALSE(result.current[1]);
  // Without column 1 the best is {0, 2, 3} at cost 10.
  EXPECT_EQ(result.best_value, 10);
}

}  // namespace
