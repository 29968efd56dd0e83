#pragma once

// Random SMCP-GUB instances: Bernoulli coverage, uniform integer costs and
// demands, and contiguous equal-size GUB blocks.

#include <cstdint>
#include <optional>
#include <string>

#include "smcp/model.h"

namespace smcp {

struct GeneratorParams {
  int m = 0;
  int n = 0;
  double density = 0.0;  // probability that a_ij = 1, in (0, 1]
  Cost cost_lo = 1;
  Cost cost_hi = 100;
  int demand_lo = 1;
  int demand_hi = 5;
  int block_size = 1;  // g, must divide n
  int cap = 1;         // d <= g
  std::uint64_t seed = 1;
};

// Throws std::invalid_argument on inconsistent parameters.
void check_params(const GeneratorParams& params);

// Every column covers at least one row and every row is covered by at least
// max(b_i, 2) columns; repairs pick uniformly random rows and columns.
// Feasibility under the GUB caps is not guaranteed.
Instance generate(const GeneratorParams& params);

struct ClassPreset {
  char name;
  int m;
  int n;
  double density;
  int cap[4];         // d_h per type
  int block_size[4];  // |G_h| per type
  double time_limit;  // seconds
};

// Benchmark classes G to N; type is 1..4. Returns nullopt for an unknown
// class letter or type.
std::optional<ClassPreset> class_preset(char name);
std::optional<GeneratorParams> class_params(char name, int type, int index,
                                            std::uint64_t seed);

}  // namespace smcp
