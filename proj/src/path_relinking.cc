#include "smcp/path_relinking.h"

#include <algorithm>

#include "smcp/local_search.h"

namespace smcp {

bool offer(std::vector<Solution>& set, int capacity, const Instance& inst,
           const Solution& x, std::span<const Weight> w) {
  if (std::find(set.begin(), set.end(), x) != set.end()) return false;
  if (static_cast<int>(set.size()) < capacity) {
    set.push_back(x);
    return true;
  }
  if (set.empty()) return false;
  std::size_t worst = 0;
  double worst_value = penalized_objective(inst, set[0], w);
  for (std::size_t k = 1; k < set.size(); ++k) {
    const double v = penalized_objective(inst, set[k], w);
    if (v > worst_value) {
      worst = k;
      worst_value = v;
    }
  }
  if (penalized_objective(inst, x, w) > worst_value) return false;
  set[worst] = x;
  return true;
}

void update_references(ReferenceSets& refs, const Instance& inst, const Solution& x_hat,
                       const Solution& x_best, std::span<const Weight> w,
                       std::span<const Weight> w_bar) {
  offer(refs.r1, refs.capacity, inst, x_hat, w);
  offer(refs.r2, refs.capacity, inst, x_best, w_bar);
}

Solution randomized_greedy(const Instance& inst, std::span<const Weight> w_bar, Rng& rng,
                           bool uniform, int width) {
  SearchState state(inst, std::vector<Weight>(w_bar.begin(), w_bar.end()), w_bar,
                    Solution(inst.num_cols()));
  std::vector<std::pair<double, int>> candidates;
  for (;;) {
    candidates.clear();
    for (int j = 0; j < inst.num_cols(); ++j) {
      if (!state.can_add(j)) continue;
      const double d = state.delta_up(j);
      if (d < 0.0) candidates.emplace_back(d, j);
    }
    if (candidates.empty()) break;
    std::size_t pool = candidates.size();
    if (!uniform && static_cast<int>(pool) > width) {
      pool = static_cast<std::size_t>(width);
      std::partial_sort(candidates.begin(), candidates.begin() + width, candidates.end());
    }
    state.flip(candidates[rng.below(pool)].second);
  }
  for (int j; (j = best_improving_drop(state)) >= 0;) state.flip(j);
  return state.solution();
}

Solution relink_path(const Instance& inst, const Solution& init, const Solution& guide,
                     std::span<const Weight> w) {
  std::vector<Weight> weights(w.begin(), w.end());
  SearchState state(inst, weights, w, init);
  std::vector<int> differing;
  for (int j = 0; j < inst.num_cols(); ++j) {
    if (init[j] != guide[j]) differing.push_back(j);
  }
  while (!differing.empty()) {
    std::size_t best = differing.size();
    double best_delta = 0.0;
    for (std::size_t k = 0; k < differing.size(); ++k) {
      const int j = differing[k];
      double d;
      if (state.selected(j)) {
        d = state.delta_down(j);
      } else if (state.can_add(j)) {
        d = state.delta_up(j);
      } else {
        continue;
      }
      if (best == differing.size() || d < best_delta) {
        best = k;
        best_delta = d;
      }
    }
    // Every remaining move is GUB-blocked, or the next point is no better.
    if (best == differing.size() || best_delta >= 0.0) break;
    state.flip(differing[best]);
    differing.erase(differing.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return state.solution();
}

RelinkOutcome path_relink(const Instance& inst, const Solution& x_hat,
                          const ReferenceSets& refs, std::span<const Weight> w, Rng& rng,
                          int attempts) {
  if (refs.r1.empty() || refs.r2.empty()) return {x_hat, true};
  const Solution* init = nullptr;
  const Solution* guide = nullptr;
  for (int attempt = 0; attempt < std::max(attempts, 1); ++attempt) {
    const Solution& a = refs.r1[rng.below(refs.r1.size())];
    const Solution& b = refs.r2[rng.below(refs.r2.size())];
    if (penalized_objective(inst, a, w) <= penalized_objective(inst, b, w)) {
      init = &a;
      guide = &b;
    } else {
      init = &b;
      guide = &a;
    }
    if (*init != x_hat) return {relink_path(inst, *init, *guide, w), false};
  }
  return {*init, true};
}

}  // namespace smcp
