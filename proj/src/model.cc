#include "smcp/model.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace smcp {

namespace {

void check_length(const Instance& inst, const Solution& x) {
  if (x.size() != inst.num_cols()) {
    throw std::invalid_argument("solution has " + std::to_string(x.size()) +
                                " entries, instance has " +
                                std::to_string(inst.num_cols()) + " columns");
  }
}

template <typename Lists>
void flatten(const Lists& lists, std::vector<std::int64_t>& start,
             std::vector<int>& index) {
  start.assign(lists.size() + 1, 0);
  for (std::size_t k = 0; k < lists.size(); ++k) {
    start[k + 1] = start[k] + static_cast<std::int64_t>(lists[k].size());
  }
  index.clear();
  index.reserve(static_cast<std::size_t>(start.back()));
  for (const auto& list : lists) index.insert(index.end(), list.begin(), list.end());
}

}  // namespace

Instance::Instance() : matrix_(std::make_shared<Matrix>()) {}

Instance::Instance(const InstanceData& data) {
  auto matrix = std::make_shared<Matrix>();
  matrix->cost = data.cost;
  flatten(data.col_rows, matrix->col_start, matrix->col_index);
  flatten(data.row_cols, matrix->row_start, matrix->row_index);
  const int n = static_cast<int>(data.cost.size());
  matrix->block_of.assign(n, -1);
  caps_.reserve(data.blocks.size());
  for (std::size_t h = 0; h < data.blocks.size(); ++h) {
    matrix->block_columns.push_back(data.blocks[h].columns);
    caps_.push_back(data.blocks[h].cap);
    for (int j : data.blocks[h].columns) {
      if (j >= 0 && j < n) matrix->block_of[j] = static_cast<int>(h);
    }
  }
  matrix->total_cost = std::accumulate(data.cost.begin(), data.cost.end(), Cost{0});
  // Malformed data may list fewer columns or rows than it declares; pad the
  // CSR offsets so accessors stay in bounds and validate() can report it.
  const std::size_t m = data.demand.size();
  while (matrix->col_start.size() < static_cast<std::size_t>(n) + 1) {
    matrix->col_start.push_back(matrix->col_start.back());
  }
  while (matrix->row_start.size() < m + 1) {
    matrix->row_start.push_back(matrix->row_start.back());
  }
  matrix_ = std::move(matrix);
  demand_ = data.demand;
}

Instance Instance::from_columns(std::vector<Cost> cost,
                                std::vector<std::vector<int>> col_rows,
                                std::vector<int> demand,
                                std::vector<Block> blocks) {
  InstanceData data;
  const int m = static_cast<int>(demand.size());
  data.row_cols.assign(m, {});
  for (auto& rows : col_rows) std::sort(rows.begin(), rows.end());
  for (std::size_t j = 0; j < col_rows.size(); ++j) {
    for (int i : col_rows[j]) {
      if (i < 0 || i >= m) {
        throw std::invalid_argument("column " + std::to_string(j) +
                                    " references row " + std::to_string(i) +
                                    " outside [0, " + std::to_string(m) + ")");
      }
      data.row_cols[i].push_back(static_cast<int>(j));
    }
  }
  data.cost = std::move(cost);
  data.col_rows = std::move(col_rows);
  data.demand = std::move(demand);
  data.blocks = std::move(blocks);
  return Instance(data);
}

Instance Instance::scp(std::vector<Cost> cost,
                       std::vector<std::vector<int>> col_rows, int num_rows) {
  const int n = static_cast<int>(cost.size());
  std::vector<Block> blocks(n);
  for (int j = 0; j < n; ++j) blocks[j] = Block{{j}, 1};
  return from_columns(std::move(cost), std::move(col_rows),
                      std::vector<int>(num_rows, 1), std::move(blocks));
}

double Instance::density() const {
  if (num_rows() == 0 || num_cols() == 0) return 0.0;
  return static_cast<double>(nonzeros()) /
         (static_cast<double>(num_rows()) * num_cols());
}

Instance Instance::with_bounds(std::vector<int> demand,
                               std::vector<int> caps) const {
  if (demand.size() != demand_.size() || caps.size() != caps_.size()) {
    throw std::invalid_argument("with_bounds: size mismatch");
  }
  Instance copy;
  copy.matrix_ = matrix_;
  copy.demand_ = std::move(demand);
  copy.caps_ = std::move(caps);
  return copy;
}

InstanceData Instance::to_data() const {
  InstanceData data;
  data.cost = matrix_->cost;
  data.col_rows.resize(num_cols());
  for (int j = 0; j < num_cols(); ++j) {
    auto rows = rows_of(j);
    data.col_rows[j].assign(rows.begin(), rows.end());
  }
  data.row_cols.resize(num_rows());
  for (int i = 0; i < num_rows(); ++i) {
    auto cols = cols_of(i);
    data.row_cols[i].assign(cols.begin(), cols.end());
  }
  data.demand = demand_;
  for (int h = 0; h < num_blocks(); ++h) {
    auto cols = block_columns(h);
    data.blocks.push_back(Block{{cols.begin(), cols.end()}, caps_[h]});
  }
  return data;
}

bool operator==(const Instance& a, const Instance& b) {
  return a.to_data() == b.to_data();
}

Solution Solution::from_columns(int n, std::span<const int> columns) {
  Solution x(n);
  for (int j : columns) {
    if (j < 0 || j >= n) throw std::out_of_range("column index out of range");
    x.set(j, true);
  }
  return x;
}

std::vector<int> Solution::selected() const {
  std::vector<int> out;
  for (int j = 0; j < size(); ++j) {
    if (bits_[j]) out.push_back(j);
  }
  return out;
}

int Solution::count() const {
  return static_cast<int>(std::count(bits_.begin(), bits_.end(), 1));
}

int hamming_distance(const Solution& a, const Solution& b) {
  if (a.size() != b.size()) throw std::invalid_argument("hamming_distance: size mismatch");
  int d = 0;
  for (int j = 0; j < a.size(); ++j) d += a[j] != b[j];
  return d;
}

std::vector<Weight> initial_weights(const Instance& inst) {
  return std::vector<Weight>(inst.num_rows(),
                             static_cast<Weight>(inst.total_cost() + 1));
}

PenaltyWeights PenaltyWeights::initial(const Instance& inst) {
  PenaltyWeights pw;
  pw.w_bar = initial_weights(inst);
  pw.w = pw.w_bar;
  return pw;
}

Cost objective(const Instance& inst, const Solution& x) {
  check_length(inst, x);
  Cost z = 0;
  for (int j = 0; j < x.size(); ++j) {
    if (x[j]) z += inst.cost(j);
  }
  return z;
}

std::vector<int> coverage_counts(const Instance& inst, const Solution& x) {
  check_length(inst, x);
  std::vector<int> s(inst.num_rows(), 0);
  for (int j = 0; j < x.size(); ++j) {
    if (!x[j]) continue;
    for (int i : inst.rows_of(j)) ++s[i];
  }
  return s;
}

std::vector<int> violations(const Instance& inst, const Solution& x) {
  std::vector<int> y = coverage_counts(inst, x);
  for (int i = 0; i < inst.num_rows(); ++i) {
    y[i] = std::max(inst.demand(i) - y[i], 0);
  }
  return y;
}

double penalized_objective(const Instance& inst, const Solution& x,
                           std::span<const Weight> w) {
  if (static_cast<int>(w.size()) != inst.num_rows()) {
    throw std::invalid_argument("penalized_objective: weight vector size mismatch");
  }
  const std::vector<int> y = violations(inst, x);
  double penalty = 0.0;
  for (int i = 0; i < inst.num_rows(); ++i) penalty += w[i] * y[i];
  return static_cast<double>(objective(inst, x)) + penalty;
}

bool is_gub_feasible(const Instance& inst, const Solution& x) {
  check_length(inst, x);
  for (int h = 0; h < inst.num_blocks(); ++h) {
    int used = 0;
    for (int j : inst.block_columns(h)) used += x[j];
    if (used > inst.cap(h)) return false;
  }
  return true;
}

bool is_feasible(const Instance& inst, const Solution& x) {
  if (!is_gub_feasible(inst, x)) return false;
  const std::vector<int> s = coverage_counts(inst, x);
  for (int i = 0; i < inst.num_rows(); ++i) {
    if (s[i] < inst.demand(i)) return false;
  }
  return true;
}

std::vector<Violation> validate(const InstanceData& data) {
  std::vector<Violation> out;
  auto report = [&out](std::string code, std::string message) {
    out.push_back({std::move(code), std::move(message)});
  };
  const int n = static_cast<int>(data.cost.size());
  const int m = static_cast<int>(data.demand.size());

  if (static_cast<int>(data.col_rows.size()) != n) {
    report("size_mismatch", "col_rows has " + std::to_string(data.col_rows.size()) +
                                " entries for " + std::to_string(n) + " columns");
  }
  if (static_cast<int>(data.row_cols.size()) != m) {
    report("size_mismatch", "row_cols has " + std::to_string(data.row_cols.size()) +
                                " entries for " + std::to_string(m) + " rows");
  }
  for (int j = 0; j < n; ++j) {
    if (data.cost[j] <= 0) {
      report("nonpositive_cost", "column " + std::to_string(j + 1) + " has cost " +
                                     std::to_string(data.cost[j]));
    }
  }
  for (int i = 0; i < m; ++i) {
    if (data.demand[i] < 0) {
      report("negative_demand", "row " + std::to_string(i + 1) + " has negative demand");
    }
  }

  const int cols_listed = std::min<int>(n, static_cast<int>(data.col_rows.size()));
  for (int j = 0; j < cols_listed; ++j) {
    const auto& rows = data.col_rows[j];
    if (rows.empty()) {
      report("empty_column", "column " + std::to_string(j + 1) + " covers no row");
    }
    if (!std::is_sorted(rows.begin(), rows.end()) ||
        std::adjacent_find(rows.begin(), rows.end()) != rows.end()) {
      report("unsorted", "row list of column " + std::to_string(j + 1) +
                             " is not strictly increasing");
    }
    for (int i : rows) {
      if (i < 0 || i >= m) {
        report("index_out_of_range", "column " + std::to_string(j + 1) +
                                         " references row " + std::to_string(i + 1));
      }
    }
  }
  const int rows_listed = std::min<int>(m, static_cast<int>(data.row_cols.size()));
  for (int i = 0; i < rows_listed; ++i) {
    for (int j : data.row_cols[i]) {
      if (j < 0 || j >= n) {
        report("index_out_of_range", "row " + std::to_string(i + 1) +
                                         " references column " + std::to_string(j + 1));
      }
    }
  }

  // Transpose check: the set of (i, j) pairs must agree.
  std::vector<std::pair<int, int>> by_col, by_row;
  for (int j = 0; j < cols_listed; ++j) {
    for (int i : data.col_rows[j]) by_col.emplace_back(i, j);
  }
  for (int i = 0; i < rows_listed; ++i) {
    for (int j : data.row_cols[i]) by_row.emplace_back(i, j);
  }
  std::sort(by_col.begin(), by_col.end());
  std::sort(by_row.begin(), by_row.end());
  if (by_col != by_row) {
    report("transpose_mismatch", "transpose mismatch between column and row lists");
  }

  std::vector<int> owner(n, -1);
  for (std::size_t h = 0; h < data.blocks.size(); ++h) {
    const Block& block = data.blocks[h];
    const std::string name = "block " + std::to_string(h + 1);
    if (block.cap < 1) report("cap_range", name + ": cap below 1");
    if (block.cap > static_cast<int>(block.columns.size())) {
      report("cap_range", name + ": cap exceeds block size");
    }
    for (int j : block.columns) {
      if (j < 0 || j >= n) {
        report("index_out_of_range", name + " references column " + std::to_string(j + 1));
        continue;
      }
      if (owner[j] >= 0) {
        report("block_partition", "column " + std::to_string(j + 1) +
                                      " belongs to more than one block");
      }
      owner[j] = static_cast<int>(h);
    }
  }
  for (int j = 0; j < n; ++j) {
    if (owner[j] < 0) {
      report("block_partition", "column " + std::to_string(j + 1) + " belongs to no block");
    }
  }
  return out;
}

std::vector<Violation> validate(const Instance& inst) {
  return validate(inst.to_data());
}

}  // namespace smcp
