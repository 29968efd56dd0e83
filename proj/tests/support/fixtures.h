#pragma once

// Shared instances for the test suites.

#include <algorithm>
#include <vector>

#include "smcp/model.h"
#include "smcp/rng.h"

namespace fixtures {

// Three rows, four columns (0-based here):
//   S_0 = {0,1} c=4, S_1 = {1,2} c=3, S_2 = {0,2} c=5, S_3 = {2} c=1
//   b = (1,1,2), blocks {0,1} cap 1 and {2,3} cap 2.
// Unique optimum {1,2} with cost 8.
inline smcp::Instance t1() {
  return smcp::Instance::from_columns({4, 3, 5, 1}, {{0, 1}, {1, 2}, {0, 2}, {2}}, {1, 1, 2},
                                      {{{0, 1}, 1}, {{2, 3}, 2}});
}

inline smcp::Instance t1_with_demand(std::vector<int> b) {
  return smcp::Instance::from_columns({4, 3, 5, 1}, {{0, 1}, {1, 2}, {0, 2}, {2}},
                                      std::move(b), {{{0, 1}, 1}, {{2, 3}, 2}});
}

struct RandomSpec {
  int min_rows = 3;
  int max_rows = 20;
  int min_cols = 4;
  int max_cols = 40;
  int max_demand = 3;
  double density = 0.25;
  int max_cost = 20;
};

// Random instance with equal-size contiguous blocks, random caps and every
// column covering at least one row. Rows may be impossible to satisfy.
inline smcp::Instance random_instance(smcp::Rng& rng, const RandomSpec& spec = {}) {
  const int m = static_cast<int>(rng.between(spec.min_rows, spec.max_rows));
  int n = static_cast<int>(rng.between(spec.min_cols, spec.max_cols));
  std::vector<int> sizes;
  for (int g = 1; g <= n; ++g) {
    if (n % g == 0 && g <= 8) sizes.push_back(g);
  }
  const int g = sizes[rng.below(sizes.size())];
  std::vector<smcp::Cost> cost(n);
  std::vector<std::vector<int>> cols(n);
  for (int j = 0; j < n; ++j) {
    cost[j] = rng.between(1, spec.max_cost);
    for (int i = 0; i < m; ++i) {
      if (rng.uniform01() < spec.density) cols[j].push_back(i);
    }
    if (cols[j].empty()) cols[j].push_back(static_cast<int>(rng.below(m)));
  }
  std::vector<int> demand(m);
  for (int& b : demand) b = static_cast<int>(rng.between(1, spec.max_demand));
  std::vector<smcp::Block> blocks;
  for (int start = 0; start < n; start += g) {
    smcp::Block block;
    for (int j = start; j < start + g; ++j) block.columns.push_back(j);
    block.cap = static_cast<int>(rng.between(1, g));
    blocks.push_back(std::move(block));
  }
  return smcp::Instance::from_columns(std::move(cost), std::move(cols), std::move(demand),
                                      std::move(blocks));
}

// Random GUB-feasible 0-1 vector.
inline smcp::Solution random_gub_solution(smcp::Rng& rng, const smcp::Instance& inst,
                                          double p = 0.4) {
  smcp::Solution x(inst.num_cols());
  for (int h = 0; h < inst.num_blocks(); ++h) {
    int count = 0;
    for (int j : inst.block_columns(h)) {
      if (count < inst.cap(h) && rng.uniform01() < p) {
        x.set(j, true);
        ++count;
      }
    }
  }
  return x;
}

inline std::vector<std::uint8_t> bits(const smcp::Solution& x) {
  return {x.bits().begin(), x.bits().end()};
}

}  // namespace fixtures
