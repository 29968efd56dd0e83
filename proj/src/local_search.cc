#include "smcp/local_search.h"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace smcp {

SearchState::SearchState(const Instance& inst, std::vector<Weight> weights,
                         std::span<const Weight> reference_weights, const Solution& x,
                         std::span<const std::uint8_t> active)
    : inst_(&inst),
      weights_(std::move(weights)),
      reference_weights_(reference_weights.begin(), reference_weights.end()),
      x_(x) {
  const int m = inst.num_rows();
  const int n = inst.num_cols();
  if (static_cast<int>(weights_.size()) != m ||
      static_cast<int>(reference_weights_.size()) != m) {
    throw std::invalid_argument("weight vector size mismatch");
  }
  if (x_.size() != n) throw std::invalid_argument("solution size mismatch");
  if (!active.empty() && static_cast<int>(active.size()) != n) {
    throw std::invalid_argument("active mask size mismatch");
  }

  active_.assign(n, 1);
  if (!active.empty()) {
    for (int j = 0; j < n; ++j) active_[j] = active[j] ? 1 : 0;
  }
  block_active_.resize(inst.num_blocks());
  for (int j = 0; j < n; ++j) {
    if (!active_[j]) {
      if (x_[j]) throw std::invalid_argument("solution selects an inactive column");
      continue;
    }
    active_list_.push_back(j);
    block_active_[inst.block_of(j)].push_back(j);
  }

  // Row lists restricted to active columns, so flips touch only the core.
  row_start_.assign(m + 1, 0);
  for (int j : active_list_) {
    for (int i : inst.rows_of(j)) ++row_start_[i + 1];
  }
  for (int i = 0; i < m; ++i) row_start_[i + 1] += row_start_[i];
  row_active_.resize(row_start_[m]);
  std::vector<std::int64_t> fill(row_start_.begin(), row_start_.end() - 1);
  for (int j : active_list_) {
    for (int i : inst.rows_of(j)) row_active_[fill[i]++] = j;
  }

  block_count_.assign(inst.num_blocks(), 0);
  for (int j = 0; j < n; ++j) {
    if (x_[j]) ++block_count_[inst.block_of(j)];
  }
  for (int h = 0; h < inst.num_blocks(); ++h) {
    if (block_count_[h] > inst.cap(h)) {
      throw std::invalid_argument("initial solution violates a GUB constraint");
    }
  }
  rebuild();
}

void SearchState::rebuild() {
  const Instance& inst = *inst_;
  const int m = inst.num_rows();
  const int n = inst.num_cols();
  selected_.clear();
  position_.assign(n, -1);
  coverage_.assign(m, 0);
  cost_ = 0;
  for (int j = 0; j < n; ++j) {
    if (!x_[j]) continue;
    position_[j] = static_cast<int>(selected_.size());
    selected_.push_back(j);
    cost_ += inst.cost(j);
    for (int i : inst.rows_of(j)) ++coverage_[i];
  }
  penalty_ = 0.0;
  reference_penalty_ = 0.0;
  for (int i = 0; i < m; ++i) {
    const int gap = inst.demand(i) - coverage_[i];
    if (gap > 0) {
      penalty_ += weights_[i] * gap;
      reference_penalty_ += reference_weights_[i] * gap;
    }
  }
  dp_up_.assign(n, 0.0);
  dp_down_.assign(n, 0.0);
  for (int j : active_list_) {
    Weight up = 0.0, down = 0.0;
    for (int i : inst.rows_of(j)) {
      if (coverage_[i] < inst.demand(i)) up += weights_[i];
      if (coverage_[i] <= inst.demand(i)) down += weights_[i];
    }
    dp_up_[j] = up;
    dp_down_[j] = down;
  }
}

void SearchState::set_weights(std::vector<Weight> weights) {
  if (weights.size() != weights_.size()) {
    throw std::invalid_argument("weight vector size mismatch");
  }
  weights_ = std::move(weights);
  rebuild();
}

double SearchState::two_flip_delta(int j1, int j2) const {
  double delta = delta_down(j1) + delta_up(j2);
  auto a = inst_->rows_of(j1);
  auto b = inst_->rows_of(j2);
  std::size_t p = 0, q = 0;
  while (p < a.size() && q < b.size()) {
    if (a[p] < b[q]) {
      ++p;
    } else if (b[q] < a[p]) {
      ++q;
    } else {
      const int i = a[p];
      if (coverage_[i] == inst_->demand(i)) delta -= weights_[i];
      ++p;
      ++q;
    }
  }
  return delta;
}

void SearchState::flip(int j) {
  if (trial_pending_) throw std::logic_error("flip with a pending trial flip");
  if (!x_[j]) {
    if (!active_[j]) {
      throw std::logic_error("column " + std::to_string(j) + " is not active");
    }
    if (block_saturated(inst_->block_of(j))) {
      throw std::logic_error("flip of column " + std::to_string(j) +
                             " violates a GUB constraint");
    }
  }
  apply_flip(j, false);
}

void SearchState::trial_flip(int j) {
  if (trial_pending_) throw std::logic_error("nested trial flip");
  if (!x_[j] && (!active_[j] || block_saturated(inst_->block_of(j)))) {
    throw std::logic_error("infeasible trial flip");
  }
  journal_.column = j;
  journal_.position = position_[j];
  journal_.cost = cost_;
  journal_.penalty = penalty_;
  journal_.reference_penalty = reference_penalty_;
  journal_.up.clear();
  journal_.down.clear();
  touched_up_.clear();
  trial_pending_ = true;
  apply_flip(j, true);
}

void SearchState::rollback() {
  if (!trial_pending_) throw std::logic_error("rollback without a trial flip");
  const int j = journal_.column;
  for (auto it = journal_.up.rbegin(); it != journal_.up.rend(); ++it) dp_up_[it->first] = it->second;
  for (auto it = journal_.down.rbegin(); it != journal_.down.rend(); ++it) {
    dp_down_[it->first] = it->second;
  }
  const bool was_selected = x_[j];  // state after the trial
  for (int i : inst_->rows_of(j)) coverage_[i] += was_selected ? -1 : 1;
  block_count_[inst_->block_of(j)] += was_selected ? -1 : 1;
  x_.flip(j);
  if (was_selected) {
    // Undo an append.
    selected_.pop_back();
    position_[j] = -1;
  } else {
    // Undo a swap-remove at journal_.position.
    const int p = journal_.position;
    if (p == static_cast<int>(selected_.size())) {
      selected_.push_back(j);
    } else {
      const int moved = selected_[p];
      position_[moved] = static_cast<int>(selected_.size());
      selected_.push_back(moved);
      selected_[p] = j;
    }
    position_[j] = p;
  }
  cost_ = journal_.cost;
  penalty_ = journal_.penalty;
  reference_penalty_ = journal_.reference_penalty;
  trial_pending_ = false;
  touched_up_.clear();
}

void SearchState::apply_flip(int j, bool journal) {
  const Instance& inst = *inst_;
  const bool adding = !x_[j];
  x_.flip(j);
  const int h = inst.block_of(j);
  if (adding) {
    ++block_count_[h];
    cost_ += inst.cost(j);
    position_[j] = static_cast<int>(selected_.size());
    selected_.push_back(j);
  } else {
    --block_count_[h];
    cost_ -= inst.cost(j);
    const int p = position_[j];
    const int last = selected_.back();
    selected_[p] = last;
    position_[last] = p;
    selected_.pop_back();
    position_[j] = -1;
  }

  for (int i : inst.rows_of(j)) {
    const int b = inst.demand(i);
    const Weight w = weights_[i];
    const auto cols = std::span<const int>(row_active_).subspan(
        row_start_[i], row_start_[i + 1] - row_start_[i]);
    if (adding) {
      const int s = ++coverage_[i];
      if (s <= b) {
        penalty_ -= w;
        reference_penalty_ -= reference_weights_[i];
      }
      if (s == b) {
        // Row leaves M_L.
        for (int l : cols) {
          if (journal) {
            journal_.up.emplace_back(l, dp_up_[l]);
            touched_up_.push_back(l);
          }
          dp_up_[l] -= w;
        }
      } else if (s == b + 1) {
        // Row leaves M_E.
        for (int l : cols) {
          if (journal) journal_.down.emplace_back(l, dp_down_[l]);
          dp_down_[l] -= w;
        }
      }
    } else {
      const int s = --coverage_[i];
      if (s < b) {
        penalty_ += w;
        reference_penalty_ += reference_weights_[i];
      }
      if (s == b - 1) {
        // Row enters M_L.
        for (int l : cols) {
          if (journal) {
            journal_.up.emplace_back(l, dp_up_[l]);
            touched_up_.push_back(l);
          }
          dp_up_[l] += w;
        }
      } else if (s == b) {
        // Row enters M_E.
        for (int l : cols) {
          if (journal) journal_.down.emplace_back(l, dp_down_[l]);
          dp_down_[l] += w;
        }
      }
    }
  }
}

namespace {

bool better(double a, int ja, double b, int jb) { return a < b || (a == b && ja < jb); }

void record_best(const SearchState& state, LocalSearchResult& result) {
  if (state.reference_value() < result.best_reference_value) {
    result.best_reference_value = state.reference_value();
    auto cols = state.selected_columns();
    result.best_reference_columns.assign(cols.begin(), cols.end());
  }
}

}  // namespace

int best_improving_add(const SearchState& state) {
  int best = -1;
  double best_delta = 0.0;
  for (int j : state.active_columns()) {
    if (!state.can_add(j)) continue;
    const double d = state.delta_up(j);
    if (d < best_delta) {
      best = j;
      best_delta = d;
    }
  }
  return best;
}

int best_improving_drop(const SearchState& state) {
  int best = -1;
  double best_delta = 0.0;
  for (int j : state.selected_columns()) {
    const double d = state.delta_down(j);
    if (d < 0.0 && (best < 0 || better(d, j, best_delta, best))) {
      best = j;
      best_delta = d;
    }
  }
  return best;
}

std::optional<FlipPair> block_swap_candidate(const SearchState& state, int h) {
  if (!state.block_saturated(h)) return std::nullopt;
  int drop = -1, add = -1;
  double drop_delta = 0.0, add_delta = 0.0;
  for (int j : state.active_block_columns(h)) {
    if (state.selected(j)) {
      const double d = state.delta_down(j);
      if (drop < 0 || d < drop_delta) {
        drop = j;
        drop_delta = d;
      }
    } else {
      const double d = state.delta_up(j);
      if (add < 0 || d < add_delta) {
        add = j;
        add_delta = d;
      }
    }
  }
  if (drop < 0 || add < 0) return std::nullopt;
  return FlipPair{drop, add, state.two_flip_delta(drop, add)};
}

std::optional<FlipPair> best_swap_for_drop(SearchState& state, int j1) {
  const double drop_delta = state.delta_down(j1);
  const Instance& inst = state.instance();
  state.trial_flip(j1);
  std::optional<FlipPair> best;
  for (int l : state.trial_touched_up()) {
    if (l == j1 || !state.can_add(l)) continue;
    const double d = drop_delta + static_cast<double>(inst.cost(l)) - state.dp_up(l);
    if (d < 0.0 && (!best || better(d, l, best->delta, best->add))) {
      best = FlipPair{j1, l, d};
    }
  }
  state.rollback();
  return best;
}

namespace {

std::vector<int> drop_order(const SearchState& state) {
  std::vector<int> order(state.selected_columns().begin(), state.selected_columns().end());
  std::sort(order.begin(), order.end(), [&state](int a, int b) {
    return better(state.delta_down(a), a, state.delta_down(b), b);
  });
  return order;
}

}  // namespace

std::optional<FlipPair> find_improving_two_flip(SearchState& state) {
  for (int h = 0; h < state.instance().num_blocks(); ++h) {
    auto pair = block_swap_candidate(state, h);
    if (pair && pair->delta < 0.0) return pair;
  }
  for (int j1 : drop_order(state)) {
    auto pair = best_swap_for_drop(state, j1);
    if (pair) return pair;
  }
  return std::nullopt;
}

LocalSearchResult two_fnls(SearchState& state, const LocalSearchOptions& options) {
  LocalSearchResult result;
  result.best_reference_value = state.reference_value();
  result.best_reference_columns.assign(state.selected_columns().begin(),
                                       state.selected_columns().end());
  const int num_blocks = state.instance().num_blocks();

  auto move_pair = [&](const FlipPair& pair) {
    state.flip(pair.drop);
    state.flip(pair.add);
    ++result.moves;
    record_best(state, result);
  };

  for (;;) {
    ++result.rounds;
    for (int j; (j = best_improving_add(state)) >= 0;) {
      state.flip(j);
      ++result.moves;
      record_best(state, result);
    }
    for (int j; (j = best_improving_drop(state)) >= 0;) {
      state.flip(j);
      ++result.moves;
      record_best(state, result);
    }
    if (options.on_one_flip_phase_end) options.on_one_flip_phase_end(state);
    if (options.neighborhood == Neighborhood::OneFlip) break;

    for (bool updated = true; updated;) {
      updated = false;
      for (int h = 0; h < num_blocks; ++h) {
        auto pair = block_swap_candidate(state, h);
        if (pair && pair->delta < 0.0) {
          move_pair(*pair);
          updated = true;
        }
      }
    }

    bool updated = false;
    for (int j1 : drop_order(state)) {
      if (!state.selected(j1)) continue;
      auto pair = best_swap_for_drop(state, j1);
      if (pair) {
        move_pair(*pair);
        updated = true;
      }
    }
    if (!updated) break;
  }
  return result;
}

}  // namespace smcp
