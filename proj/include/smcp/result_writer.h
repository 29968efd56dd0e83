#pragma once

#include <optional>
#include <string>
#include <vector>

#include "smcp/solver.h"

namespace smcp {

struct RunRecord {
  std::string instance;
  RunResult result;
  std::optional<double> z_lp;  // external reference value, if known
};

// Build identifier compiled into the library (git describe output).
const char* build_id();

// One JSON object per run: config echo, seed, incumbent value, bound,
// feasibility and the improvement timeline.
std::string to_json(const RunRecord& record);

// Versioned CSV: a "# smcp-results v1" comment line, a header and one row
// per record.
std::string csv_header();
std::string to_csv_row(const RunRecord& record);
std::string to_csv(const std::vector<RunRecord>& records);

}  // namespace smcp
