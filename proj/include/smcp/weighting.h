#pragma once

// Weighting local search: repeated 2-FNLS calls with adaptive penalty
// weights. After each call the weights are either scaled down uniformly or
// raised on violated rows, and the best solution under the initial weights
// w_bar is tracked.
//
// Weights are kept on a dyadic grid (multiples of weight_quantum()) so that
// the incremental sums in SearchState are exact and flips are reversible bit
// for bit.

#include <cstdint>
#include <span>
#include <vector>

#include "smcp/local_search.h"
#include "smcp/model.h"

namespace smcp {

// Power of two q such that every partial penalty sum of the instance is an
// exact multiple of q below 2^52 q. Never larger than needed, never below
// 2^-16.
double weight_quantum(const Instance& inst);

// Rounds w down (up) to the grid, keeping at least one quantum.
double quantize_down(double w, double quantum);
double quantize_up(double w, double quantum);

// Returns eta for the uniform decrease w <- (1 - eta) w: the smallest value
// (plus a small margin) that makes delta_down negative for at least
// ceil(fraction * |X(x)|) selected columns. Returns 0 when that many are
// already negative or nothing is selected.
double decrease_factor(const SearchState& state, double fraction);

// w_i <- (1 - eta) w_i, rounded down to the grid.
void decrease_weights(std::vector<Weight>& w, double eta, double quantum);

// w_i <- min(w_i (1 + delta y_i / max_l y_l), w_bar_i), rounded up to the
// grid. No change when every y_i is 0.
void increase_weights(std::vector<Weight>& w, std::span<const Weight> w_bar,
                      std::span<const int> y, double delta, double quantum);

struct WlsParams {
  int window = 50;         // stop after this many calls without improvement
  double delta = 0.2;      // increase step
  double fraction = 0.15;  // share of selected columns made droppable by a decrease
  Neighborhood neighborhood = Neighborhood::TwoFlip;
  // Hard cap on 2-FNLS calls; 0 means none.
  int max_calls = 0;
};

struct WlsResult {
  Solution current;  // x_hat, where the last 2-FNLS stopped
  Solution best;     // best visited solution under w_bar
  double best_value = 0.0;
  double current_value = 0.0;  // zhat(x_hat, w) under the final weights
  std::vector<Weight> weights;  // final w
  int calls = 0;
  std::int64_t moves = 0;
};

// Runs WLS from x0 with w reset to w_bar. `active` restricts the columns that
// may be selected (empty = all); x0 must select only active columns.
WlsResult wls(const Instance& inst, const Solution& x0, std::span<const Weight> w_bar,
              std::span<const std::uint8_t> active = {}, const WlsParams& params = {});

}  // namespace smcp
