#include "smcp/reduction.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "smcp/relaxation.h"

namespace smcp {

std::vector<double> fix_probabilities(std::span<const double> reduced) {
  std::vector<double> prob(reduced.size(), 0.0);
  if (reduced.empty()) return prob;
  const double top = *std::max_element(reduced.begin(), reduced.end());
  double total = 0.0;
  for (double c : reduced) total += top - c;
  if (total <= 0.0) {
    std::fill(prob.begin(), prob.end(), 1.0 / static_cast<double>(reduced.size()));
    return prob;
  }
  for (std::size_t k = 0; k < reduced.size(); ++k) prob[k] = (top - reduced[k]) / total;
  return prob;
}

namespace {

std::size_t draw(std::span<const double> prob, Rng& rng) {
  const double r = rng.uniform01();
  double cumulative = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t k = 0; k < prob.size(); ++k) {
    if (prob[k] <= 0.0) continue;
    last_positive = k;
    cumulative += prob[k];
    if (r < cumulative) return k;
  }
  return last_positive;
}

}  // namespace

FixedSet fix_variables(const Instance& inst, const Solution& incumbent,
                       const Solution& current, std::span<const double> multipliers,
                       Rng& rng, double fraction) {
  const int m = inst.num_rows();
  const int n = inst.num_cols();
  if (incumbent.size() != n || current.size() != n) {
    throw std::invalid_argument("solution size mismatch");
  }
  if (static_cast<int>(multipliers.size()) != m) {
    throw std::invalid_argument("multiplier vector size mismatch");
  }

  FixedSet fixed;
  fixed.absorbed_demand.assign(m, 0);
  fixed.absorbed_cap.assign(inst.num_blocks(), 0);
  fixed.multipliers.assign(multipliers.begin(), multipliers.end());
  fixed.base_demand.assign(inst.demands().begin(), inst.demands().end());
  fixed.base_caps.assign(inst.caps().begin(), inst.caps().end());

  std::vector<int> candidates;
  std::vector<double> reduced;
  for (int j = 0; j < n; ++j) {
    if (!incumbent[j] || !current[j]) continue;
    candidates.push_back(j);
    double c = static_cast<double>(inst.cost(j));
    for (int i : inst.rows_of(j)) c -= multipliers[i];
    reduced.push_back(c);
  }

  const auto target = static_cast<int>(std::ceil(fraction * m - 1e-12));
  int satisfied = 0;
  for (int i = 0; i < m; ++i) {
    if (inst.demand(i) <= 0) ++satisfied;
  }
  while (satisfied < target) {
    if (candidates.empty()) {
      fixed.exhausted = true;
      break;
    }
    const std::size_t k = draw(fix_probabilities(reduced), rng);
    const int j = candidates[k];
    candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(k));
    reduced.erase(reduced.begin() + static_cast<std::ptrdiff_t>(k));
    fixed.columns.push_back(j);
    fixed.fixed_cost += inst.cost(j);
    ++fixed.absorbed_cap[inst.block_of(j)];
    for (int i : inst.rows_of(j)) {
      if (++fixed.absorbed_demand[i] == inst.demand(i)) ++satisfied;
    }
  }
  fixed.satisfied_rows = satisfied;
  for (int i = 0; i < m; ++i) {
    if (fixed.absorbed_demand[i] >= inst.demand(i)) fixed.multipliers[i] = 0.0;
  }
  return fixed;
}

Instance apply_fixing(const Instance& inst, const FixedSet& fixed) {
  std::vector<int> demand(inst.num_rows());
  for (int i = 0; i < inst.num_rows(); ++i) {
    demand[i] = std::max(inst.demand(i) - fixed.absorbed_demand[i], 0);
  }
  std::vector<int> caps(inst.num_blocks());
  for (int h = 0; h < inst.num_blocks(); ++h) caps[h] = inst.cap(h) - fixed.absorbed_cap[h];
  return inst.with_bounds(std::move(demand), std::move(caps));
}

Instance remove_fixing(const Instance& reduced, const FixedSet& fixed) {
  return reduced.with_bounds(fixed.base_demand, fixed.base_caps);
}

std::vector<std::uint8_t> free_mask(int n, const FixedSet& fixed) {
  std::vector<std::uint8_t> mask(n, 1);
  for (int j : fixed.columns) mask[j] = 0;
  return mask;
}

ScoreVector lagrangian_scores(const Instance& inst, std::span<const double> u) {
  return ScoreVector{ScoreKind::Lagrangian, lagrangian_costs(inst, u), {}};
}

ScoreVector normalized_scores(const Instance& inst, std::span<const double> u,
                              std::span<const std::uint8_t> free) {
  ScoreVector out{ScoreKind::Normalized, lagrangian_costs(inst, u), {}};
  out.threshold.assign(inst.num_blocks(), 0.0);
  std::vector<double> values;
  for (int h = 0; h < inst.num_blocks(); ++h) {
    values.clear();
    for (int j : inst.block_columns(h)) {
      if (free.empty() || free[j]) values.push_back(out.score[j]);
    }
    const int cap = std::max(inst.cap(h), 0);
    if (cap >= static_cast<int>(values.size())) continue;
    std::nth_element(values.begin(), values.begin() + cap, values.end());
    const double theta = values[cap];
    out.threshold[h] = theta;
    if (theta >= 0.0) continue;
    for (int j : inst.block_columns(h)) out.score[j] -= theta;
  }
  return out;
}

ScoreVector pseudo_scores(const Instance& inst, std::span<const double> w) {
  return ScoreVector{ScoreKind::Pseudo, lagrangian_costs(inst, w), {}};
}

CoreProblem build_core(const Instance& inst, std::span<const double> score,
                       const Solution& incumbent, const Solution& current,
                       std::span<const std::uint8_t> free, int multiplier) {
  const int n = inst.num_cols();
  if (static_cast<int>(score.size()) != n) throw std::invalid_argument("score size mismatch");
  auto is_free = [&free](int j) { return free.empty() || free[j] != 0; };
  auto lower = [&score](int a, int b) {
    return score[a] < score[b] || (score[a] == score[b] && a < b);
  };

  CoreProblem core;
  core.member.assign(n, 0);

  std::vector<int> pool;
  for (int i = 0; i < inst.num_rows(); ++i) {
    const int b = inst.demand(i);
    if (b <= 0) continue;
    pool.clear();
    for (int j : inst.cols_of(i)) {
      if (is_free(j)) pool.push_back(j);
    }
    if (b < static_cast<int>(pool.size())) {
      std::nth_element(pool.begin(), pool.begin() + b, pool.end(), lower);
      pool.resize(b);
    }
    for (int j : pool) core.member[j] = 1;
  }

  int selected = 0;
  for (int j = 0; j < n; ++j) {
    if (current[j] && is_free(j)) ++selected;
  }
  const std::int64_t wanted = static_cast<std::int64_t>(multiplier) * selected;
  pool.clear();
  for (int j = 0; j < n; ++j) {
    if (is_free(j)) pool.push_back(j);
  }
  if (wanted < static_cast<std::int64_t>(pool.size())) {
    std::nth_element(pool.begin(), pool.begin() + wanted, pool.end(), lower);
    pool.resize(static_cast<std::size_t>(wanted));
  }
  for (int j : pool) core.member[j] = 1;

  for (int j = 0; j < n; ++j) {
    if ((incumbent[j] || current[j]) && is_free(j)) core.member[j] = 1;
  }
  core.size = static_cast<int>(std::count(core.member.begin(), core.member.end(), 1));
  return core;
}

}  // namespace smcp
