#include "smcp/weighting.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace smcp {

double weight_quantum(const Instance& inst) {
  const Weight w_bar = static_cast<Weight>(inst.total_cost()) + 1.0;
  double total = 0.0;
  for (int i = 0; i < inst.num_rows(); ++i) total += w_bar * std::max(inst.demand(i), 1);
  double quantum = 0x1.0p-16;
  while (total / quantum >= 0x1.0p52) quantum *= 2.0;
  return quantum;
}

namespace {

// Grid points within rounding noise of t count as exact, so 10 * 1.1 maps to
// 11 rather than to 11 plus a quantum.
double snap(double t, double (*direction)(double)) {
  const double nearest = std::round(t);
  if (std::abs(t - nearest) <= 1e-12 * std::max(1.0, std::abs(t))) return nearest;
  return direction(t);
}

}  // namespace

double quantize_down(double w, double quantum) {
  return std::max(snap(w / quantum, std::floor) * quantum, quantum);
}

double quantize_up(double w, double quantum) {
  return std::max(snap(w / quantum, std::ceil) * quantum, quantum);
}

double decrease_factor(const SearchState& state, double fraction) {
  const auto selected = state.selected_columns();
  if (selected.empty()) return 0.0;
  const auto target = static_cast<std::size_t>(
      std::ceil(fraction * static_cast<double>(selected.size()) - 1e-12));
  if (target == 0) return 0.0;
  // Scaling by (1 - eta) makes delta_down(j) = -c_j + (1 - eta) dp_down(j)
  // negative once eta > 1 - c_j / dp_down(j). Columns with dp_down = 0 are
  // already droppable.
  std::vector<double> ratio;
  ratio.reserve(selected.size());
  const Instance& inst = state.instance();
  for (int j : selected) {
    const double down = state.dp_down(j);
    ratio.push_back(down > 0.0 ? 1.0 - static_cast<double>(inst.cost(j)) / down
                               : -std::numeric_limits<double>::infinity());
  }
  const std::size_t k = std::min(target, ratio.size()) - 1;
  std::nth_element(ratio.begin(), ratio.begin() + k, ratio.end());
  const double r = ratio[k];
  if (r < 0.0) return 0.0;
  return r + 1e-9 * (1.0 - r);
}

void decrease_weights(std::vector<Weight>& w, double eta, double quantum) {
  if (eta <= 0.0) return;
  for (Weight& wi : w) wi = quantize_down((1.0 - eta) * wi, quantum);
}

void increase_weights(std::vector<Weight>& w, std::span<const Weight> w_bar,
                      std::span<const int> y, double delta, double quantum) {
  if (w.size() != w_bar.size() || w.size() != y.size()) {
    throw std::invalid_argument("weight vector size mismatch");
  }
  const int max_y = y.empty() ? 0 : *std::max_element(y.begin(), y.end());
  if (max_y <= 0) return;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (y[i] <= 0) continue;
    const double raised = w[i] * (1.0 + delta * y[i] / max_y);
    w[i] = std::min(quantize_up(raised, quantum), w_bar[i]);
  }
}

WlsResult wls(const Instance& inst, const Solution& x0, std::span<const Weight> w_bar,
              std::span<const std::uint8_t> active, const WlsParams& params) {
  const double quantum = weight_quantum(inst);
  std::vector<Weight> w(w_bar.begin(), w_bar.end());
  SearchState state(inst, w, w_bar, x0, active);

  WlsResult result;
  result.best = x0;
  result.best_value = state.reference_value();

  LocalSearchOptions options;
  options.neighborhood = params.neighborhood;
  std::vector<int> violation(inst.num_rows());

  for (int stale = 0;;) {
    const LocalSearchResult pass = two_fnls(state, options);
    ++result.calls;
    result.moves += pass.moves;
    if (pass.best_reference_value < result.best_value) {
      result.best_value = pass.best_reference_value;
      result.best = Solution::from_columns(inst.num_cols(), pass.best_reference_columns);
      stale = 0;
    } else {
      ++stale;
    }
    if (stale >= params.window) break;
    if (params.max_calls > 0 && result.calls >= params.max_calls) break;

    if (state.value() >= result.best_value) {
      decrease_weights(w, decrease_factor(state, params.fraction), quantum);
    } else {
      for (int i = 0; i < inst.num_rows(); ++i) {
        violation[i] = std::max(inst.demand(i) - state.coverage(i), 0);
      }
      increase_weights(w, w_bar, violation, params.delta, quantum);
    }
    state.set_weights(w);
  }

  result.current = state.solution();
  result.current_value = state.value();
  result.weights = std::move(w);
  return result;
}

}  // namespace smcp
