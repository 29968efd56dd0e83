#include <gtest/gtest.h>

#include "fixtures.h"
#include "oracle.h"

namespace {

TEST(Oracle, T1Optimum) {
  const auto data = fixtures::t1().to_data();
  const auto opt = oracle::brute_force_optimum(data);
  ASSERT_TRUE(opt.feasible);
  EXPECT_EQ(opt.cost, 8);
  EXPECT_EQ(opt.x, (oracle::Bits{0, 1, 1, 0}));
  const auto by_block = oracle::block_enumeration_optimum(data);
  EXPECT_EQ(by_block.cost, 8);
  EXPECT_EQ(by_block.x, opt.x);
}

TEST(Oracle, T1RaisedDemand) {
  // Columns 1, 2 and 3 fit the caps together and cover the last row three times.
  const auto data = fixtures::t1_with_demand({1, 1, 3}).to_data();
  const auto opt = oracle::brute_force_optimum(data);
  ASSERT_TRUE(opt.feasible);
  EXPECT_EQ(opt.cost, 9);
  EXPECT_EQ(oracle::block_enumeration_optimum(data).cost, 9);
  EXPECT_FALSE(oracle::brute_force_optimum(fixtures::t1_with_demand({2, 2, 3}).to_data()).feasible);
}

TEST(Oracle, SingleColumn) {
  const auto data = smcp::Instance::scp({6}, {{0, 1, 2}}, 3).to_data();
  const auto opt = oracle::brute_force_optimum(data);
  EXPECT_EQ(opt.cost, 6);
  EXPECT_EQ(opt.x, (oracle::Bits{1}));
}

TEST(Oracle, SizeCap) {
  std::vector<smcp::Cost> cost(25, 1);
  std::vector<std::vector<int>> rows(25, std::vector<int>{0});
  const auto data = smcp::Instance::scp(cost, rows, 1).to_data();
  EXPECT_THROW(oracle::brute_force_optimum(data), std::invalid_argument);
  EXPECT_THROW(oracle::brute_force_lr(data, {1.0}), std::invalid_argument);
}

TEST(Oracle, LagrangianRelaxation) {
  const auto data = fixtures::t1().to_data();
  EXPECT_EQ(oracle::brute_force_lr(data, {2, 2, 2}).value, 6);
  const auto zero = oracle::brute_force_lr(data, {0, 0, 0});
  EXPECT_EQ(zero.value, 0);
  EXPECT_EQ(zero.x, (oracle::Bits{0, 0, 0, 0}));
}

TEST(Oracle, TwoFlipScan) {
  const auto data = fixtures::t1().to_data();
  const std::vector<double> w{14, 14, 14};
  EXPECT_FALSE(oracle::exhaustive_2flip_scan(data, {0, 1, 1, 0}, w));
  const auto move = oracle::exhaustive_2flip_scan(data, {1, 0, 1, 1}, w);
  ASSERT_TRUE(move);
  EXPECT_EQ(move->a, 0);
  EXPECT_EQ(move->b, 1);
  EXPECT_EQ(move->delta, -1);
}

TEST(Oracle, RecomputeOnT1) {
  const auto data = fixtures::t1().to_data();
  const auto c = oracle::recompute(data, {0, 1, 1, 0}, {14, 14, 14});
  EXPECT_EQ(c.s, (std::vector<int>{1, 1, 2}));
  EXPECT_EQ(c.down[1], 28);
  EXPECT_EQ(c.up[3], 0);
  EXPECT_EQ(c.block_count, (std::vector<int>{1, 1}));
  EXPECT_EQ(c.value, 8);
}

TEST(Oracle, FeasibleSolutionsOfT1) {
  const auto all = oracle::feasible_solutions(fixtures::t1().to_data());
  // {1,2}, {1,2,3} and {0,2,3}.
  EXPECT_EQ(all.size(), 3u);
}

// The two enumerations agree on random instances.
TEST(Oracle, EnumerationsAgree) {
  smcp::Rng rng(13);
  fixtures::RandomSpec spec;
  spec.max_cols = 16;
  spec.max_rows = 10;
  for (int trial = 0; trial < 100; ++trial) {
    const auto data = fixtures::random_instance(rng, spec).to_data();
    const auto a = oracle::brute_force_optimum(data);
    const auto b = oracle::block_enumeration_optimum(data);
    EXPECT_EQ(a.feasible, b.feasible);
    if (a.feasible) {
      EXPECT_EQ(a.cost, b.cost);
    }
  }
}

}  // namespace
