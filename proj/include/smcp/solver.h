#pragma once

// The complete heuristic: randomized greedy reference sets, one subgradient
// run, then FIX -> CORE -> WLS -> reference update -> path relinking until
// the time limit.

#include <cstdint>
#include <string>
#include <vector>

#include "smcp/local_search.h"
#include "smcp/model.h"
#include "smcp/relaxation.h"

namespace smcp {

enum class ScoreScheme { Lagrangian, Normalized, Pseudo, None };

const char* to_string(ScoreScheme scheme);
const char* to_string(Neighborhood neighborhood);
// Throws std::invalid_argument for unknown names.
ScoreScheme parse_score_scheme(const std::string& name);
Neighborhood parse_neighborhood(const std::string& name);

struct SolverConfig {
  ScoreScheme scheme = ScoreScheme::Pseudo;
  double time_limit = 10.0;  // seconds, checked between WLS calls
  std::uint64_t seed = 1;
  Neighborhood neighborhood = Neighborhood::TwoFlip;
  bool path_relinking = true;
  bool uniform_greedy = false;
  // Under the pseudo scheme the bound is only reported; this skips it.
  bool skip_bound = false;
  // Stop after this many WLS calls; 0 means no cap. Makes runs comparable
  // independently of machine speed.
  int max_loops = 0;
  // Stop as soon as a feasible incumbent meets the rounded-up lower bound.
  bool stop_at_bound = true;

  int wls_window = 50;
  double wls_delta = 0.2;
  double wls_fraction = 0.15;
  double fix_fraction = 0.2;
  int core_multiplier = 10;
  int greedy_width = 5;
  int reference_capacity = 10;
  int relink_attempts = 10;
  SubgradientParams subgradient;
};

struct TimelineEntry {
  double time = 0.0;  // seconds since start
  int loop = 0;       // 0 for the initial greedy solution
  double value = 0.0; // zhat(x*, w_bar)
  Cost objective = 0;
};

struct RunResult {
  Solution incumbent;
  Cost objective = 0;
  bool feasible = false;
  double penalized = 0.0;       // zhat(x*, w_bar)
  bool infeasible_signal = false;  // penalized > sum_j c_j
  bool has_lower_bound = false;
  double lower_bound = 0.0;
  int subgradient_iterations = 0;
  int loops = 0;
  std::int64_t wls_calls = 0;
  std::int64_t moves = 0;
  double core_ratio = 0.0;  // mean |C| / n over the loops that built a core
  int fix_exhausted = 0;
  int relink_fallbacks = 0;
  bool proven_optimal = false;
  double elapsed = 0.0;
  std::vector<TimelineEntry> timeline;
  SolverConfig config;
};

// Solves inst, which should pass validate(). Deterministic for a fixed config
// when max_loops bounds the run.
RunResult solve(const Instance& inst, const SolverConfig& config);

}  // namespace smcp
