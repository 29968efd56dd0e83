#pragma once

// Lagrangian relaxation of the multicover constraints. For multipliers
// u >= 0 the relaxed problem separates by GUB block and is solved in closed
// form; the subgradient method searches for multipliers with a large bound.

#include <span>
#include <vector>

#include "smcp/model.h"

namespace smcp {

using Multipliers = std::vector<double>;

struct LrSolution {
  Solution x;
  double value = 0.0;                // z_LR(u), a lower bound on z(x) for feasible x
  std::vector<double> reduced_cost;  // c_j - sum_{i in S_j} u_i
};

// Lagrangian costs c_j(u) = c_j - sum_{i in S_j} u_i.
std::vector<double> lagrangian_costs(const Instance& inst, std::span<const double> u);

// Optimal solution of the relaxed problem: per block, take every column with
// negative Lagrangian cost if there are at most d_h of them, otherwise the
// d_h cheapest (lowest index first on ties).
LrSolution solve_lr(const Instance& inst, std::span<const double> u);

// g_i = b_i - sum_j a_ij x_j.
std::vector<double> subgradient(const Instance& inst, const Solution& x);

// One projected update u_i <- max(u_i + step * (ub - z_lr) / |g|^2 * g_i, 0).
// Returns u unchanged when |g| = 0.
Multipliers subgradient_step(std::span<const double> u, std::span<const double> g,
                             double z_lr, double upper_bound, double step);

// u_i = min_{j in N_i} c_j / |S_j|, a common dual-feasible starting point.
Multipliers default_multipliers(const Instance& inst);

struct SubgradientParams {
  double initial_step = 2.0;
  // Halve the step when the bound has not improved for this many iterations.
  int patience = 30;
  double min_step = 0.005;
  // 0 selects 10 * m.
  int max_iterations = 0;
  // Pricing: iterate on a core of low Lagrangian cost columns.
  bool pricing = true;
  int core_rows_factor = 5;  // core keeps the core_rows_factor * m cheapest columns
  int refresh_period = 100;
  // Empty selects default_multipliers().
  Multipliers initial_multipliers;
};

struct SubgradientResult {
  Multipliers multipliers;  // attains lower_bound
  double lower_bound = 0.0;
  int iterations = 0;
  int refreshes = 0;
};

// Runs the subgradient method against upper bound ub (the penalized value of
// the incumbent under the initial weights). The returned bound is always an
// exact z_LR over all columns. Deterministic.
SubgradientResult subgradient_method(const Instance& inst, double upper_bound,
                                     const SubgradientParams& params = {});

}  // namespace smcp
