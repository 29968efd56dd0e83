#pragma once

// Instance size reduction: probabilistic fixing of variables shared by the
// incumbent and the current solution, the column scores used to rank free
// columns, and the core problem built from them.

#include <cstdint>
#include <span>
#include <vector>

#include "smcp/model.h"
#include "smcp/rng.h"

namespace smcp {

// Selection probabilities over a candidate list with Lagrangian costs
// `reduced`: proportional to (max - c_j), uniform when all are equal.
std::vector<double> fix_probabilities(std::span<const double> reduced);

struct FixedSet {
  std::vector<int> columns;             // F, in draw order
  std::vector<int> absorbed_demand;     // per row: |S_j ∩ {i}| summed over F
  std::vector<int> absorbed_cap;        // per block: |G_h ∩ F|
  Cost fixed_cost = 0;
  std::vector<double> multipliers;      // input multipliers, zeroed on rows F satisfies
  int satisfied_rows = 0;               // rows with absorbed_demand >= b_i
  bool exhausted = false;               // candidates ran out before the target
  std::vector<int> base_demand;         // bounds of the instance F was drawn from
  std::vector<int> base_caps;
};

// Draws columns without replacement from V = X(incumbent) ∩ X(current) until
// at least ceil(fraction * m) rows are satisfied by the fixed columns alone.
// `multipliers` are u for the Lagrangian schemes and w for the pseudo scheme.
FixedSet fix_variables(const Instance& inst, const Solution& incumbent,
                       const Solution& current, std::span<const double> multipliers,
                       Rng& rng, double fraction = 0.2);

// b'_i = max(b_i - absorbed_i, 0), d'_h = d_h - |G_h ∩ F|. Shares the matrix.
Instance apply_fixing(const Instance& inst, const FixedSet& fixed);
// Inverse of apply_fixing.
Instance remove_fixing(const Instance& reduced, const FixedSet& fixed);

// Mask with 1 for every column not in F.
std::vector<std::uint8_t> free_mask(int n, const FixedSet& fixed);

enum class ScoreKind { Lagrangian, Normalized, Pseudo };

struct ScoreVector {
  ScoreKind kind = ScoreKind::Lagrangian;
  std::vector<double> score;      // per column; meaningful on free columns
  std::vector<double> threshold;  // theta_h per block (normalized scores only)
};

// c_j(u).
ScoreVector lagrangian_scores(const Instance& inst, std::span<const double> u);

// rho_j = c_j(u) - theta_h if theta_h < 0, else c_j(u), where theta_h is the
// (d_h + 1)-th lowest c_j(u) over the block's free columns (0 when the cap
// admits every free column).
ScoreVector normalized_scores(const Instance& inst, std::span<const double> u,
                              std::span<const std::uint8_t> free = {});

// phi_j = c_j(w).
ScoreVector pseudo_scores(const Instance& inst, std::span<const double> w);

struct CoreProblem {
  std::vector<std::uint8_t> member;
  int size = 0;
};

// C = C1 ∪ C2 ∪ X(incumbent) ∪ X(current) over the free columns, where C1
// holds the b_i lowest-scored columns of each row and C2 the
// multiplier * |X(current)| lowest-scored columns overall. Ties go to the lower
// index.
CoreProblem build_core(const Instance& inst, std::span<const double> score,
                       const Solution& incumbent, const Solution& current,
                       std::span<const std::uint8_t> free = {}, int multiplier = 10);

}  // namespace smcp
