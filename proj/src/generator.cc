#include "smcp/generator.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "smcp/rng.h"

namespace smcp {

void check_params(const GeneratorParams& p) {
  if (p.m <= 0 || p.n <= 0) throw std::invalid_argument("m and n must be positive");
  if (!(p.density > 0.0 && p.density <= 1.0)) {
    throw std::invalid_argument("density must lie in (0, 1]");
  }
  if (p.cost_lo < 1 || p.cost_hi < p.cost_lo) throw std::invalid_argument("bad cost range");
  if (p.demand_lo < 0 || p.demand_hi < p.demand_lo) {
    throw std::invalid_argument("bad demand range");
  }
  if (p.block_size < 1 || p.n % p.block_size != 0) {
    throw std::invalid_argument("block size must divide n");
  }
  if (p.cap < 1 || p.cap > p.block_size) throw std::invalid_argument("cap must lie in [1, g]");
  if (std::max(p.demand_hi, 2) > p.n) throw std::invalid_argument("too few columns for demands");
}

Instance generate(const GeneratorParams& p) {
  check_params(p);
  Rng rng(p.seed);
  const int m = p.m;
  const int n = p.n;

  std::vector<Cost> cost(n);
  for (Cost& c : cost) c = rng.between(p.cost_lo, p.cost_hi);
  std::vector<int> demand(m);
  for (int& b : demand) b = static_cast<int>(rng.between(p.demand_lo, p.demand_hi));

  // Bernoulli(density) per entry by geometric skipping down each column.
  std::vector<std::vector<int>> col_rows(n);
  std::vector<int> row_count(m, 0);
  const double log_q = std::log1p(-p.density);
  for (int j = 0; j < n; ++j) {
    auto& rows = col_rows[j];
    if (p.density >= 1.0) {
      for (int i = 0; i < m; ++i) rows.push_back(i);
    } else {
      for (std::int64_t i = -1;;) {
        const double u = 1.0 - rng.uniform01();  // in (0, 1]
        i += 1 + static_cast<std::int64_t>(std::floor(std::log(u) / log_q));
        if (i >= m) break;
        rows.push_back(static_cast<int>(i));
      }
    }
    if (rows.empty()) rows.push_back(static_cast<int>(rng.below(m)));
    for (int i : rows) ++row_count[i];
  }

  // Rows covered too thinly get extra random columns.
  std::vector<std::vector<int>> row_cols(m);
  for (int j = 0; j < n; ++j) {
    for (int i : col_rows[j]) row_cols[i].push_back(j);
  }
  for (int i = 0; i < m; ++i) {
    const int need = std::max(demand[i], 2);
    auto& cols = row_cols[i];
    while (static_cast<int>(cols.size()) < need) {
      const int j = static_cast<int>(rng.below(n));
      if (std::find(cols.begin(), cols.end(), j) != cols.end()) continue;
      cols.push_back(j);
      col_rows[j].push_back(i);
    }
  }

  std::vector<Block> blocks(n / p.block_size);
  for (std::size_t h = 0; h < blocks.size(); ++h) {
    blocks[h].cap = p.cap;
    for (int t = 0; t < p.block_size; ++t) {
      blocks[h].columns.push_back(static_cast<int>(h) * p.block_size + t);
    }
  }
  return Instance::from_columns(std::move(cost), std::move(col_rows), std::move(demand),
                                std::move(blocks));
}

namespace {

constexpr ClassPreset kPresets[] = {
    {'G', 1000, 10000, 0.02, {1, 10, 5, 50}, {10, 100, 10, 100}, 600.0},
    {'H', 1000, 10000, 0.05, {1, 10, 5, 50}, {10, 100, 50, 100}, 600.0},
    {'I', 1000, 50000, 0.01, {1, 10, 5, 50}, {50, 500, 50, 500}, 600.0},
    {'J', 1000, 100000, 0.01, {1, 10, 5, 50}, {50, 500, 50, 500}, 600.0},
    {'K', 2000, 100000, 0.005, {1, 10, 5, 50}, {50, 500, 50, 500}, 1200.0},
    {'L', 2000, 200000, 0.005, {1, 10, 5, 50}, {50, 500, 50, 500}, 1200.0},
    {'M', 5000, 500000, 0.0025, {1, 10, 5, 50}, {50, 500, 50, 500}, 3000.0},
    {'N', 5000, 1000000, 0.0025, {1, 10, 5, 50}, {100, 1000, 100, 1000}, 3000.0},
};

}  // namespace

std::optional<ClassPreset> class_preset(char name) {
  for (const ClassPreset& preset : kPresets) {
    if (preset.name == name) return preset;
  }
  return std::nullopt;
}

std::optional<GeneratorParams> class_params(char name, int type, int index,
                                            std::uint64_t seed) {
  const auto preset = class_preset(name);
  if (!preset || type < 1 || type > 4) return std::nullopt;
  GeneratorParams p;
  p.m = preset->m;
  p.n = preset->n;
  p.density = preset->density;
  p.cost_lo = 1;
  p.cost_hi = 100;
  p.demand_lo = 1;
  p.demand_hi = 5;
  p.cap = preset->cap[type - 1];
  p.block_size = preset->block_size[type - 1];
  // Distinct instances of a class share the seed and differ by index.
  p.seed = seed * 1000003ULL + static_cast<std::uint64_t>(index);
  return p;
}

}  // namespace smcp
