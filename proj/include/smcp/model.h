#pragma once

// Problem and solution representation for the set multicover problem with
// generalized upper bound (GUB) constraints:
//
//   minimize    sum_j c_j x_j
//   subject to  sum_{j in N_i} x_j >= b_i     for every row i
//               sum_{j in G_h} x_j <= d_h     for every block h
//               x_j in {0, 1}
//
// Rows and columns are 0-based everywhere in the library. File formats use
// 1-based indices (see io.h).

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace smcp {

using Cost = std::int64_t;
using Weight = double;

struct Block {
  std::vector<int> columns;
  int cap = 0;

  bool operator==(const Block&) const = default;
};

// Raw contents of an instance. Nothing is checked at this level; see
// validate().
struct InstanceData {
  std::vector<Cost> cost;
  std::vector<std::vector<int>> col_rows;
  std::vector<std::vector<int>> row_cols;
  std::vector<int> demand;
  std::vector<Block> blocks;

  bool operator==(const InstanceData&) const = default;
};

// Immutable instance. The coverage matrix and block structure are shared
// between copies, so instances that differ only in demands or caps (see
// with_bounds()) are cheap to create and safe to use from several threads.
class Instance {
 public:
  Instance();
  explicit Instance(const InstanceData& data);

  // Derives the row lists from the column lists.
  static Instance from_columns(std::vector<Cost> cost,
                               std::vector<std::vector<int>> col_rows,
                               std::vector<int> demand,
                               std::vector<Block> blocks);

  // Plain set covering: unit demands and n singleton blocks with cap 1,
  // which makes every 0-1 vector GUB-feasible.
  static Instance scp(std::vector<Cost> cost,
                      std::vector<std::vector<int>> col_rows, int num_rows);

  int num_rows() const { return static_cast<int>(demand_.size()); }
  int num_cols() const { return static_cast<int>(matrix_->cost.size()); }
  int num_blocks() const { return static_cast<int>(caps_.size()); }

  Cost cost(int j) const { return matrix_->cost[j]; }
  std::span<const Cost> costs() const { return matrix_->cost; }
  Cost total_cost() const { return matrix_->total_cost; }

  std::span<const int> rows_of(int j) const {
    const auto& m = *matrix_;
    return {m.col_index.data() + m.col_start[j],
            m.col_index.data() + m.col_start[j + 1]};
  }
  std::span<const int> cols_of(int i) const {
    const auto& m = *matrix_;
    return {m.row_index.data() + m.row_start[i],
            m.row_index.data() + m.row_start[i + 1]};
  }

  int demand(int i) const { return demand_[i]; }
  std::span<const int> demands() const { return demand_; }

  std::span<const int> block_columns(int h) const {
    return matrix_->block_columns[h];
  }
  int cap(int h) const { return caps_[h]; }
  std::span<const int> caps() const { return caps_; }
  // -1 for a column that no block contains (only in invalid instances).
  int block_of(int j) const { return matrix_->block_of[j]; }

  std::int64_t nonzeros() const {
    return static_cast<std::int64_t>(matrix_->col_index.size());
  }
  double density() const;

  // Same matrix and blocks with replaced right-hand sides.
  Instance with_bounds(std::vector<int> demand, std::vector<int> caps) const;

  InstanceData to_data() const;

  friend bool operator==(const Instance& a, const Instance& b);

 private:
  struct Matrix {
    std::vector<Cost> cost;
    std::vector<std::int64_t> col_start;
    std::vector<int> col_index;
    std::vector<std::int64_t> row_start;
    std::vector<int> row_index;
    std::vector<std::vector<int>> block_columns;
    std::vector<int> block_of;
    Cost total_cost = 0;
  };

  std::shared_ptr<const Matrix> matrix_;
  std::vector<int> demand_;
  std::vector<int> caps_;
};

// A 0-1 assignment. Equality is bitwise.
class Solution {
 public:
  Solution() = default;
  explicit Solution(int n) : bits_(n, 0) {}

  static Solution from_columns(int n, std::span<const int> columns);

  int size() const { return static_cast<int>(bits_.size()); }
  bool operator[](int j) const { return bits_[j] != 0; }
  void set(int j, bool value) { bits_[j] = value ? 1 : 0; }
  void flip(int j) { bits_[j] ^= 1; }

  std::vector<int> selected() const;
  int count() const;
  std::span<const std::uint8_t> bits() const { return bits_; }

  bool operator==(const Solution&) const = default;

 private:
  std::vector<std::uint8_t> bits_;
};

int hamming_distance(const Solution& a, const Solution& b);

// Adaptive penalty weights w together with the initial vector w_bar.
// Invariant: 0 <= w_i <= w_bar_i.
struct PenaltyWeights {
  std::vector<Weight> w;
  std::vector<Weight> w_bar;

  // w = w_bar, w_bar_i = sum_j c_j + 1.
  static PenaltyWeights initial(const Instance& inst);
  void reset() { w = w_bar; }
};

std::vector<Weight> initial_weights(const Instance& inst);

// z(x) = sum_j c_j x_j. Throws std::invalid_argument on a length mismatch.
Cost objective(const Instance& inst, const Solution& x);

// z(x) + sum_i w_i max(b_i - s_i(x), 0).
double penalized_objective(const Instance& inst, const Solution& x,
                           std::span<const Weight> w);

std::vector<int> coverage_counts(const Instance& inst, const Solution& x);

// y_i = max(b_i - s_i(x), 0).
std::vector<int> violations(const Instance& inst, const Solution& x);

bool is_gub_feasible(const Instance& inst, const Solution& x);

// Multicover and GUB constraints both hold.
bool is_feasible(const Instance& inst, const Solution& x);

struct Violation {
  std::string code;
  std::string message;
};

// Checks every structural invariant. An empty result means the instance is
// valid.
std::vector<Violation> validate(const InstanceData& data);
std::vector<Violation> validate(const Instance& inst);

}  // namespace smcp
