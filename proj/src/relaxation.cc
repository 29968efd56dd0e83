#include "smcp/relaxation.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace smcp {

namespace {

void check_multipliers(const Instance& inst, std::span<const double> u) {
  if (static_cast<int>(u.size()) != inst.num_rows()) {
    throw std::invalid_argument("multiplier vector size mismatch");
  }
}

double dual_constant(const Instance& inst, std::span<const double> u) {
  double total = 0.0;
  for (int i = 0; i < inst.num_rows(); ++i) total += inst.demand(i) * u[i];
  return total;
}

double reduced_cost(const Instance& inst, std::span<const double> u, int j) {
  double c = static_cast<double>(inst.cost(j));
  for (int i : inst.rows_of(j)) c -= u[i];
  return c;
}

// Selects, within one block's candidate list, the columns of the relaxed
// optimum. `scratch` is reused between calls.
void select_in_block(std::span<const int> members, int cap,
                     std::span<const double> reduced, std::vector<int>& scratch,
                     std::vector<int>& chosen) {
  scratch.clear();
  for (int j : members) {
    if (reduced[j] < 0.0) scratch.push_back(j);
  }
  if (static_cast<int>(scratch.size()) > cap) {
    auto cheaper = [&reduced](int a, int b) {
      return reduced[a] < reduced[b] || (reduced[a] == reduced[b] && a < b);
    };
    std::nth_element(scratch.begin(), scratch.begin() + cap, scratch.end(), cheaper);
    scratch.resize(cap);
  }
  chosen.insert(chosen.end(), scratch.begin(), scratch.end());
}

struct RelaxedPoint {
  std::vector<int> chosen;
  double value = 0.0;
};

// Relaxed optimum restricted to per-block candidate lists.
RelaxedPoint solve_restricted(const Instance& inst, std::span<const double> u,
                              std::span<const double> reduced,
                              const std::vector<std::vector<int>>& block_members) {
  RelaxedPoint point;
  std::vector<int> scratch;
  for (int h = 0; h < inst.num_blocks(); ++h) {
    select_in_block(block_members[h], inst.cap(h), reduced, scratch, point.chosen);
  }
  double value = dual_constant(inst, u);
  for (int j : point.chosen) value += reduced[j];
  point.value = value;
  return point;
}

std::vector<double> subgradient_of(const Instance& inst, std::span<const int> chosen) {
  std::vector<double> g(inst.num_rows());
  for (int i = 0; i < inst.num_rows(); ++i) g[i] = inst.demand(i);
  for (int j : chosen) {
    for (int i : inst.rows_of(j)) g[i] -= 1.0;
  }
  return g;
}

}  // namespace

std::vector<double> lagrangian_costs(const Instance& inst, std::span<const double> u) {
  check_multipliers(inst, u);
  std::vector<double> reduced(inst.num_cols());
  for (int j = 0; j < inst.num_cols(); ++j) reduced[j] = reduced_cost(inst, u, j);
  return reduced;
}

LrSolution solve_lr(const Instance& inst, std::span<const double> u) {
  LrSolution out;
  out.reduced_cost = lagrangian_costs(inst, u);
  out.x = Solution(inst.num_cols());
  std::vector<int> scratch, chosen;
  for (int h = 0; h < inst.num_blocks(); ++h) {
    select_in_block(inst.block_columns(h), inst.cap(h), out.reduced_cost, scratch, chosen);
  }
  double value = dual_constant(inst, u);
  std::sort(chosen.begin(), chosen.end());
  for (int j : chosen) {
    out.x.set(j, true);
    value += out.reduced_cost[j];
  }
  out.value = value;
  return out;
}

std::vector<double> subgradient(const Instance& inst, const Solution& x) {
  return subgradient_of(inst, x.selected());
}

Multipliers subgradient_step(std::span<const double> u, std::span<const double> g,
                             double z_lr, double upper_bound, double step) {
  double norm2 = 0.0;
  for (double gi : g) norm2 += gi * gi;
  Multipliers next(u.begin(), u.end());
  if (norm2 == 0.0) return next;
  const double scale = step * (upper_bound - z_lr) / norm2;
  for (std::size_t i = 0; i < next.size(); ++i) {
    next[i] = std::max(u[i] + scale * g[i], 0.0);
  }
  return next;
}

Multipliers default_multipliers(const Instance& inst) {
  Multipliers u(inst.num_rows(), 0.0);
  for (int i = 0; i < inst.num_rows(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (int j : inst.cols_of(i)) {
      best = std::min(best, static_cast<double>(inst.cost(j)) /
                                static_cast<double>(inst.rows_of(j).size()));
    }
    u[i] = std::isfinite(best) ? best : 0.0;
  }
  return u;
}

SubgradientResult subgradient_method(const Instance& inst, double upper_bound,
                                     const SubgradientParams& params) {
  if (params.initial_step <= 0.0) {
    throw std::invalid_argument("subgradient step size must be positive");
  }
  const int m = inst.num_rows();
  const int n = inst.num_cols();
  Multipliers u = params.initial_multipliers.empty() ? default_multipliers(inst)
                                                     : params.initial_multipliers;
  check_multipliers(inst, u);
  for (double& ui : u) ui = std::max(ui, 0.0);

  const int max_iterations = params.max_iterations > 0 ? params.max_iterations : 10 * m;
  const std::int64_t core_limit =
      static_cast<std::int64_t>(params.core_rows_factor) * static_cast<std::int64_t>(m);
  const bool use_core = params.pricing && n > core_limit;

  std::vector<std::vector<int>> all_members(inst.num_blocks());
  for (int h = 0; h < inst.num_blocks(); ++h) {
    auto cols = inst.block_columns(h);
    all_members[h].assign(cols.begin(), cols.end());
  }

  SubgradientResult result;
  std::vector<double> reduced = lagrangian_costs(inst, u);
  RelaxedPoint exact = solve_restricted(inst, u, reduced, all_members);
  result.lower_bound = exact.value;
  result.multipliers = u;

  std::vector<int> core_columns;
  std::vector<std::vector<int>> core_members(inst.num_blocks());
  std::vector<std::uint8_t> in_core(n, 0);
  auto rebuild_core = [&]() {
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    auto cheaper = [&reduced](int a, int b) {
      return reduced[a] < reduced[b] || (reduced[a] == reduced[b] && a < b);
    };
    std::nth_element(order.begin(), order.begin() + core_limit, order.end(), cheaper);
    std::fill(in_core.begin(), in_core.end(), 0);
    for (std::int64_t k = 0; k < core_limit; ++k) in_core[order[k]] = 1;
    // Each block also keeps its d_h cheapest columns, so the relaxed optimum
    // on the core always has a full choice per block.
    std::vector<int> scratch;
    for (int h = 0; h < inst.num_blocks(); ++h) {
      auto cols = inst.block_columns(h);
      scratch.assign(cols.begin(), cols.end());
      const int keep = std::min<int>(inst.cap(h), static_cast<int>(scratch.size()));
      std::nth_element(scratch.begin(), scratch.begin() + keep, scratch.end(), cheaper);
      for (int k = 0; k < keep; ++k) in_core[scratch[k]] = 1;
    }
    core_columns.clear();
    for (auto& members : core_members) members.clear();
    for (int j = 0; j < n; ++j) {
      if (!in_core[j]) continue;
      core_columns.push_back(j);
      core_members[inst.block_of(j)].push_back(j);
    }
    ++result.refreshes;
  };
  if (use_core) rebuild_core();

  auto take_exact = [&](const RelaxedPoint& point) {
    if (point.value > result.lower_bound) {
      result.lower_bound = point.value;
      result.multipliers = u;
    }
  };

  double step = params.initial_step;
  double tracked = -std::numeric_limits<double>::infinity();
  int stale = 0;
  int iteration = 0;
  for (; iteration < max_iterations && step >= params.min_step; ++iteration) {
    RelaxedPoint point;
    if (!use_core) {
      if (iteration > 0) {
        reduced = lagrangian_costs(inst, u);
        point = solve_restricted(inst, u, reduced, all_members);
      } else {
        point = exact;
      }
      take_exact(point);
    } else {
      if (iteration > 0 && iteration % params.refresh_period == 0) {
        reduced = lagrangian_costs(inst, u);
        take_exact(solve_restricted(inst, u, reduced, all_members));
        rebuild_core();
      } else {
        for (int j : core_columns) reduced[j] = reduced_cost(inst, u, j);
      }
      point = solve_restricted(inst, u, reduced, core_members);
    }

    const std::vector<double> g = subgradient_of(inst, point.chosen);
    const double gap = upper_bound - point.value;
    double norm2 = 0.0;
    for (double gi : g) norm2 += gi * gi;
    if (norm2 == 0.0 || gap <= 0.0) break;

    if (point.value > tracked) {
      tracked = point.value;
      stale = 0;
    } else if (++stale >= params.patience) {
      step *= 0.5;
      stale = 0;
    }
    u = subgradient_step(u, g, point.value, upper_bound, step);
  }
  result.iterations = iteration;

  if (use_core) {
    reduced = lagrangian_costs(inst, u);
    take_exact(solve_restricted(inst, u, reduced, all_members));
  } else if (iteration > 0) {
    // The last update was never evaluated.
    reduced = lagrangian_costs(inst, u);
    take_exact(solve_restricted(inst, u, reduced, all_members));
  }
  return result;
}

}  // namespace smcp
