#include "smcp/solver.h"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "smcp/path_relinking.h"
#include "smcp/reduction.h"
#include "smcp/rng.h"
#include "smcp/weighting.h"

namespace smcp {

const char* to_string(ScoreScheme scheme) {
  switch (scheme) {
    case ScoreScheme::Lagrangian: return "lagrangian";
    case ScoreScheme::Normalized: return "normalized";
    case ScoreScheme::Pseudo: return "pseudo";
    case ScoreScheme::None: return "none";
  }
  return "?";
}

const char* to_string(Neighborhood neighborhood) {
  return neighborhood == Neighborhood::OneFlip ? "1flip" : "2flip";
}

ScoreScheme parse_score_scheme(const std::string& name) {
  if (name == "lagrangian") return ScoreScheme::Lagrangian;
  if (name == "normalized") return ScoreScheme::Normalized;
  if (name == "pseudo") return ScoreScheme::Pseudo;
  if (name == "none") return ScoreScheme::None;
  throw std::invalid_argument("unknown score scheme: " + name);
}

Neighborhood parse_neighborhood(const std::string& name) {
  if (name == "1flip") return Neighborhood::OneFlip;
  if (name == "2flip") return Neighborhood::TwoFlip;
  throw std::invalid_argument("unknown neighborhood: " + name);
}

namespace {

using Clock = std::chrono::steady_clock;

Solution with_fixed(Solution x, const FixedSet& fixed) {
  for (int j : fixed.columns) x.set(j, true);
  return x;
}

Solution without_fixed(Solution x, const FixedSet& fixed) {
  for (int j : fixed.columns) x.set(j, false);
  return x;
}

}  // namespace

RunResult solve(const Instance& inst, const SolverConfig& config) {
  if (!(config.time_limit > 0.0)) throw std::invalid_argument("time limit must be positive");
  const auto start = Clock::now();
  auto elapsed = [&start] {
    return std::chrono::duration<double>(Clock::now() - start).count();
  };

  const int n = inst.num_cols();
  Rng rng(config.seed);
  const std::vector<Weight> w_bar = initial_weights(inst);
  std::vector<Weight> w = w_bar;

  RunResult result;
  result.config = config;

  // Reference sets from randomized greedy runs.
  ReferenceSets refs;
  refs.capacity = config.reference_capacity;
  for (int k = 0; k < refs.capacity; ++k) {
    offer(refs.r1, refs.capacity, inst,
          randomized_greedy(inst, w_bar, rng, config.uniform_greedy, config.greedy_width), w);
  }
  for (int k = 0; k < refs.capacity; ++k) {
    offer(refs.r2, refs.capacity, inst,
          randomized_greedy(inst, w_bar, rng, config.uniform_greedy, config.greedy_width),
          w_bar);
  }

  Solution x_hat;
  double x_hat_value = 0.0;
  for (const auto* set : {&refs.r1, &refs.r2}) {
    for (const Solution& x : *set) {
      const double v = penalized_objective(inst, x, w_bar);
      if (x_hat.size() == 0 || v < x_hat_value) {
        x_hat = x;
        x_hat_value = v;
      }
    }
  }
  if (x_hat.size() == 0) x_hat = Solution(n);
  Solution incumbent = x_hat;
  double incumbent_value = penalized_objective(inst, incumbent, w_bar);
  result.timeline.push_back({elapsed(), 0, incumbent_value, objective(inst, incumbent)});

  const bool needs_multipliers =
      config.scheme == ScoreScheme::Lagrangian || config.scheme == ScoreScheme::Normalized;
  Multipliers u;
  if (needs_multipliers || !config.skip_bound) {
    const SubgradientResult bound = subgradient_method(inst, incumbent_value, config.subgradient);
    u = bound.multipliers;
    result.has_lower_bound = true;
    result.lower_bound = bound.lower_bound;
    result.subgradient_iterations = bound.iterations;
  }

  auto bound_reached = [&] {
    if (!result.has_lower_bound) return false;
    if (!is_feasible(inst, incumbent)) return false;
    return static_cast<double>(objective(inst, incumbent)) <=
           std::ceil(result.lower_bound - 1e-6);
  };

  WlsParams wls_params;
  wls_params.window = config.wls_window;
  wls_params.delta = config.wls_delta;
  wls_params.fraction = config.wls_fraction;
  wls_params.neighborhood = config.neighborhood;

  double core_ratio_sum = 0.0;
  int cores = 0;
  while (!(config.stop_at_bound && bound_reached())) {
    if (config.max_loops > 0 && result.loops >= config.max_loops) break;
    if (result.loops > 0 && elapsed() >= config.time_limit) break;
    ++result.loops;

    Solution x_best;
    if (config.scheme == ScoreScheme::None) {
      WlsResult run = wls(inst, x_hat, w_bar, {}, wls_params);
      result.wls_calls += run.calls;
      result.moves += run.moves;
      x_hat = std::move(run.current);
      x_best = std::move(run.best);
      w = std::move(run.weights);
    } else {
      const std::vector<double>& multipliers =
          config.scheme == ScoreScheme::Pseudo ? w : u;
      const FixedSet fixed =
          fix_variables(inst, incumbent, x_hat, multipliers, rng, config.fix_fraction);
      if (fixed.exhausted) ++result.fix_exhausted;
      const Instance reduced = apply_fixing(inst, fixed);
      const std::vector<std::uint8_t> free = free_mask(n, fixed);

      ScoreVector score;
      switch (config.scheme) {
        case ScoreScheme::Lagrangian: score = lagrangian_scores(reduced, fixed.multipliers); break;
        case ScoreScheme::Normalized:
          score = normalized_scores(reduced, fixed.multipliers, free);
          break;
        default: score = pseudo_scores(reduced, fixed.multipliers); break;
      }
      const Solution start = without_fixed(x_hat, fixed);
      const CoreProblem core = build_core(reduced, score.score, without_fixed(incumbent, fixed),
                                          start, free, config.core_multiplier);
      core_ratio_sum += static_cast<double>(core.size) / n;
      ++cores;

      WlsResult run = wls(reduced, start, w_bar, core.member, wls_params);
      result.wls_calls += run.calls;
      result.moves += run.moves;
      x_hat = with_fixed(std::move(run.current), fixed);
      x_best = with_fixed(std::move(run.best), fixed);
      w = std::move(run.weights);
    }

    const double best_value = penalized_objective(inst, x_best, w_bar);
    if (best_value < incumbent_value) {
      incumbent = x_best;
      incumbent_value = best_value;
      result.timeline.push_back(
          {elapsed(), result.loops, incumbent_value, objective(inst, incumbent)});
    }

    update_references(refs, inst, x_hat, x_best, w, w_bar);
    if (config.path_relinking) {
      RelinkOutcome next = path_relink(inst, x_hat, refs, w, rng, config.relink_attempts);
      if (next.fallback) ++result.relink_fallbacks;
      x_hat = std::move(next.next);
    }
  }

  result.incumbent = incumbent;
  result.objective = objective(inst, incumbent);
  result.feasible = is_feasible(inst, incumbent);
  result.penalized = incumbent_value;
  result.infeasible_signal = incumbent_value > static_cast<double>(inst.total_cost());
  result.proven_optimal = bound_reached();
  result.core_ratio = cores > 0 ? core_ratio_sum / cores : 0.0;
  result.elapsed = elapsed();
  return result;
}

}  // namespace smcp
