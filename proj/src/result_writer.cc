#include "smcp/result_writer.h"

#include <iomanip>
#include <json.hpp>
#include <sstream>

#ifndef SMCP_BUILD_ID
#define SMCP_BUILD_ID "unknown"
#endif

namespace smcp {

const char* build_id() { return SMCP_BUILD_ID; }

std::string to_json(const RunRecord& record) {
  const RunResult& r = record.result;
  const SolverConfig& c = r.config;
  nlohmann::ordered_json j;
  j["instance"] = record.instance;
  j["build"] = build_id();
  j["seed"] = c.seed;
  j["config"] = {
      {"score", to_string(c.scheme)},
      {"time_limit", c.time_limit},
      {"neighborhood", to_string(c.neighborhood)},
      {"path_relinking", c.path_relinking},
      {"uniform_greedy", c.uniform_greedy},
      {"max_loops", c.max_loops},
      {"wls_window", c.wls_window},
      {"wls_delta", c.wls_delta},
      {"fix_fraction", c.fix_fraction},
      {"core_multiplier", c.core_multiplier},
      {"greedy_width", c.greedy_width},
      {"reference_capacity", c.reference_capacity},
  };
  j["objective"] = r.objective;
  j["feasible"] = r.feasible;
  j["penalized"] = r.penalized;
  j["infeasible_signal"] = r.infeasible_signal;
  if (r.has_lower_bound) {
    j["lower_bound"] = r.lower_bound;
  } else {
    j["lower_bound"] = nullptr;
  }
  if (record.z_lp) j["z_lp"] = *record.z_lp;
  j["proven_optimal"] = r.proven_optimal;
  j["loops"] = r.loops;
  j["wls_calls"] = r.wls_calls;
  j["core_ratio"] = r.core_ratio;
  j["elapsed"] = r.elapsed;
  auto columns = nlohmann::json::array();
  for (int col : r.incumbent.selected()) columns.push_back(col + 1);
  j["solution"] = columns;
  auto timeline = nlohmann::json::array();
  for (const TimelineEntry& e : r.timeline) {
    timeline.push_back({{"time", e.time}, {"loop", e.loop}, {"penalized", e.value},
                        {"objective", e.objective}});
  }
  j["timeline"] = timeline;
  return j.dump();
}

std::string csv_header() {
  return "# smcp-results v1\n"
         "instance,score,neighborhood,path_relinking,uniform_greedy,seed,time_limit,"
         "objective,feasible,penalized,lower_bound,z_lp,loops,elapsed,core_ratio,build\n";
}

std::string to_csv_row(const RunRecord& record) {
  const RunResult& r = record.result;
  const SolverConfig& c = r.config;
  std::ostringstream out;
  out << std::setprecision(10);
  out << record.instance << ',' << to_string(c.scheme) << ',' << to_string(c.neighborhood)
      << ',' << (c.path_relinking ? 1 : 0) << ',' << (c.uniform_greedy ? 1 : 0) << ','
      << c.seed << ',' << c.time_limit << ',' << r.objective << ',' << (r.feasible ? 1 : 0)
      << ',' << r.penalized << ',';
  if (r.has_lower_bound) out << r.lower_bound;
  out << ',';
  if (record.z_lp) out << *record.z_lp;
  out << ',' << r.loops << ',' << r.elapsed << ',' << r.core_ratio << ',' << build_id()
      << '\n';
  return out.str();
}

std::string to_csv(const std::vector<RunRecord>& records) {
  std::string out = csv_header();
  for (const RunRecord& record : records) out += to_csv_row(record);
  return out;
}

}  // namespace smcp
