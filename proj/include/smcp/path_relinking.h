#pragma once

// Reference sets, the randomized greedy construction, and path relinking
// between a solution of R1 (good under the current weights w) and one of R2
// (good under the initial weights w_bar).

#include <span>
#include <vector>

#include "smcp/model.h"
#include "smcp/rng.h"

namespace smcp {

struct ReferenceSets {
  int capacity = 10;
  std::vector<Solution> r1;  // judged by zhat(., w)
  std::vector<Solution> r2;  // judged by zhat(., w_bar)
};

// Adds x to `set` if it is distinct from every member and either the set is
// below capacity or x is no worse than the worst member, which it replaces.
// Values are recomputed with `w`. Returns true if the set changed.
bool offer(std::vector<Solution>& set, int capacity, const Instance& inst,
           const Solution& x, std::span<const Weight> w);

// R1 <- x_hat judged by w, then R2 <- x_best judged by w_bar.
void update_references(ReferenceSets& refs, const Instance& inst, const Solution& x_hat,
                       const Solution& x_best, std::span<const Weight> w,
                       std::span<const Weight> w_bar);

// Steps 1-2 of 2-FNLS from x = 0 under w_bar, except that each add is drawn
// uniformly among the `width` GUB-feasible improving columns with the lowest
// delta_up (among all of them when `uniform` is set).
Solution randomized_greedy(const Instance& inst, std::span<const Weight> w_bar, Rng& rng,
                           bool uniform = false, int width = 5);

// Walks from init towards guide, each step taking the 1-flip move that most
// lowers zhat(., w) among those reducing the distance to guide (GUB-infeasible
// adds skipped, ties to the lower index). Returns the first point whose
// successor is no better, or the end of the path.
Solution relink_path(const Instance& inst, const Solution& init, const Solution& guide,
                     std::span<const Weight> w);

struct RelinkOutcome {
  Solution next;
  bool fallback = false;  // no admissible (init, guide) pair was drawn
};

// Draws one member of R1 and one of R2, orders them so that init is no worse
// than guide under w, and requires init != x_hat (up to `attempts` draws).
// Falls back to the better of the last pair.
RelinkOutcome path_relink(const Instance& inst, const Solution& x_hat,
                          const ReferenceSets& refs, std::span<const Weight> w, Rng& rng,
                          int attempts = 10);

}  // namespace smcp
