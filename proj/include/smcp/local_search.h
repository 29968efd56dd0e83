#pragma once

// 2-flip neighborhood local search under the penalized objective
//
//   zhat(x, w) = sum_j c_j x_j + sum_i w_i max(b_i - s_i(x), 0).
//
// SearchState keeps the coverage counts s_i and the partial penalty sums
//
//   dp_up[j]   = sum of w_i over i in S_j with s_i <  b_i   (rows in M_L)
//   dp_down[j] = sum of w_i over i in S_j with s_i <= b_i   (rows in M_L or M_E)
//
// so that single-flip deltas cost O(1) and a flip of column j costs
// O(sum_{i in S_j} |N_i|).

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "smcp/model.h"

namespace smcp {

enum class Neighborhood { OneFlip, TwoFlip };

class SearchState {
 public:
  // `active` marks the columns the search may set to 1 (the core); empty
  // means all columns. Columns outside it stay at 0 and have no caches.
  // `reference_weights` are the initial weights w_bar used to track
  // zhat(x, w_bar) alongside zhat(x, w). x must be GUB-feasible and select
  // only active columns.
  SearchState(const Instance& inst, std::vector<Weight> weights,
              std::span<const Weight> reference_weights, const Solution& x,
              std::span<const std::uint8_t> active = {});

  const Instance& instance() const { return *inst_; }
  const Solution& solution() const { return x_; }
  bool selected(int j) const { return x_[j]; }
  // X(x) in no particular order.
  std::span<const int> selected_columns() const { return selected_; }
  int num_selected() const { return static_cast<int>(selected_.size()); }

  bool is_active(int j) const { return active_[j] != 0; }
  // Active columns in increasing index order.
  std::span<const int> active_columns() const { return active_list_; }
  std::span<const int> active_block_columns(int h) const { return block_active_[h]; }

  int coverage(int i) const { return coverage_[i]; }
  std::span<const int> coverage() const { return coverage_; }
  Weight dp_up(int j) const { return dp_up_[j]; }
  Weight dp_down(int j) const { return dp_down_[j]; }
  int block_count(int h) const { return block_count_[h]; }
  bool block_saturated(int h) const { return block_count_[h] >= inst_->cap(h); }
  std::span<const Weight> weights() const { return weights_; }

  Cost cost() const { return cost_; }
  // zhat(x, w).
  double value() const { return static_cast<double>(cost_) + penalty_; }
  // zhat(x, w_bar).
  double reference_value() const { return static_cast<double>(cost_) + reference_penalty_; }

  // Change of zhat(x, w) when x_j goes 0 -> 1 (resp. 1 -> 0).
  double delta_up(int j) const { return static_cast<double>(inst_->cost(j)) - dp_up_[j]; }
  double delta_down(int j) const { return -static_cast<double>(inst_->cost(j)) + dp_down_[j]; }

  // Change of zhat(x, w) when x_j1 goes 1 -> 0 and x_j2 goes 0 -> 1 together.
  double two_flip_delta(int j1, int j2) const;

  // x_j may go 0 -> 1 without breaking a GUB constraint.
  bool can_add(int j) const {
    return !x_[j] && active_[j] && !block_saturated(inst_->block_of(j));
  }

  // Throws std::logic_error for an inactive or GUB-violating 0 -> 1 flip.
  void flip(int j);

  // Applies flip(j) while journaling every overwritten entry; rollback()
  // restores the state bit for bit. Only one trial may be pending.
  void trial_flip(int j);
  void rollback();
  // Columns whose dp_up was modified by the pending trial flip. May repeat.
  std::span<const int> trial_touched_up() const { return touched_up_; }

  // Replaces w and rebuilds every cache.
  void set_weights(std::vector<Weight> weights);

  // Rebuilds every cache from x.
  void rebuild();

 private:
  void apply_flip(int j, bool journal);

  const Instance* inst_;
  std::vector<Weight> weights_;
  std::vector<Weight> reference_weights_;
  std::vector<std::uint8_t> active_;
  std::vector<int> active_list_;
  std::vector<std::int64_t> row_start_;
  std::vector<int> row_active_;
  std::vector<std::vector<int>> block_active_;

  Solution x_;
  std::vector<int> selected_;
  std::vector<int> position_;  // index into selected_, -1 if unselected
  std::vector<int> coverage_;
  std::vector<Weight> dp_up_;
  std::vector<Weight> dp_down_;
  std::vector<int> block_count_;
  Cost cost_ = 0;
  double penalty_ = 0.0;
  double reference_penalty_ = 0.0;

  struct Journal {
    int column = -1;
    int position = -1;
    Cost cost = 0;
    double penalty = 0.0;
    double reference_penalty = 0.0;
    std::vector<std::pair<int, Weight>> up;
    std::vector<std::pair<int, Weight>> down;
  };
  Journal journal_;
  bool trial_pending_ = false;
  std::vector<int> touched_up_;
};

struct FlipPair {
  int drop = -1;
  int add = -1;
  double delta = 0.0;
};

struct LocalSearchOptions {
  Neighborhood neighborhood = Neighborhood::TwoFlip;
  // Invoked each time the 1-flip phase (Steps 1 and 2) finishes.
  std::function<void(const SearchState&)> on_one_flip_phase_end;
};

struct LocalSearchResult {
  // Best solution with respect to zhat(x, w_bar) visited during the call.
  std::vector<int> best_reference_columns;
  double best_reference_value = 0.0;
  int moves = 0;
  int rounds = 0;
};

// Step 1: cheapest improving 0 -> 1 flip that respects GUB, or -1.
int best_improving_add(const SearchState& state);
// Step 2: cheapest improving 1 -> 0 flip, or -1.
int best_improving_drop(const SearchState& state);
// Step 3 candidate of a saturated block: (argmin delta_down, argmin delta_up)
// over the block's selected and unselected active columns. Empty if the block
// is unsaturated or one side has no column.
std::optional<FlipPair> block_swap_candidate(const SearchState& state, int h);
// Step 4 search of the neighbors obtained by dropping j1: only columns sharing
// an exactly covered row with j1 are evaluated. Returns the best improving
// pair, if any. The state is left unchanged.
std::optional<FlipPair> best_swap_for_drop(SearchState& state, int j1);

// Runs the pruned 2-flip candidate search (Steps 3 and 4) once, without moving.
// Returns an improving pair if Steps 3 or 4 would find one.
std::optional<FlipPair> find_improving_two_flip(SearchState& state);

// The 2-flip neighborhood local search. Steps 1-2 search the 1-flip
// neighborhood, Step 3 tries one swap per saturated block, Step 4 tries
// swaps sharing an exactly covered row; a success in Step 4 restarts at
// Step 1. Only strictly improving moves are taken.
LocalSearchResult two_fnls(SearchState& state, const LocalSearchOptions& options = {});

}  // namespace smcp
