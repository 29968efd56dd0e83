#include "smcp/cli.h"

#include <CLI11.hpp>

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include "smcp/generator.h"
#include "smcp/io.h"
#include "smcp/path_relinking.h"
#include "smcp/result_writer.h"
#include "smcp/solver.h"

namespace smcp {

namespace {

namespace fs = std::filesystem;

const char* kOutputDirEnv = "SMCP_OUTPUT_DIR";

std::string output_dir() {
  const char* dir = std::getenv(kOutputDirEnv);
  return dir ? dir : "";
}

// Instance name without directories and format suffixes, e.g. "G.1".
std::string instance_name(const std::string& path) {
  std::string name = fs::path(path).filename().string();
  for (const char* suffix : {".gz", ".txt", ".gub", ".scp", ".rail"}) {
    const std::string s = suffix;
    if (name.size() > s.size() && name.compare(name.size() - s.size(), s.size(), s) == 0) {
      name.resize(name.size() - s.size());
    }
  }
  return name;
}

struct SolveOptions {
  std::string instance;
  std::string format = "gub";
  std::string score = "pseudo";
  double time_limit = 0.0;
  std::string class_name;
  std::uint64_t seed = 1;
  std::string neighborhood = "2flip";
  bool no_path_relinking = false;
  bool uniform_greedy = false;
  bool skip_bound = false;
  int max_loops = 0;
  std::string out;
  std::string emit = "json";
};

void add_solver_flags(CLI::App* cmd, SolveOptions& o) {
  cmd->add_option("--format", o.format, "Instance format")
      ->check(CLI::IsMember({"orlib", "rail", "gub"}))
      ->capture_default_str();
  cmd->add_option("--time-limit", o.time_limit,
                  "Seconds per run (default: the class limit with --class, else 10)");
  cmd->add_option("--class", o.class_name, "Benchmark class G..N, selects the time limit");
  cmd->add_option("--neighborhood", o.neighborhood, "Local search neighborhood")
      ->check(CLI::IsMember({"1flip", "2flip"}))
      ->capture_default_str();
  cmd->add_flag("--no-path-relinking", o.no_path_relinking, "Disable path relinking");
  cmd->add_flag("--uniform-greedy", o.uniform_greedy,
                "Initialize with uniformly random instead of randomized greedy adds");
  cmd->add_flag("--skip-bound", o.skip_bound,
                "Skip the subgradient bound when the score does not need it");
  cmd->add_option("--max-loops", o.max_loops, "Stop after this many WLS calls (0 = none)");
}

SolverConfig make_config(const SolveOptions& o, ScoreScheme scheme, std::uint64_t seed) {
  SolverConfig config;
  config.scheme = scheme;
  config.seed = seed;
  config.neighborhood = parse_neighborhood(o.neighborhood);
  config.path_relinking = !o.no_path_relinking;
  config.uniform_greedy = o.uniform_greedy;
  config.skip_bound = o.skip_bound;
  config.max_loops = o.max_loops;
  config.time_limit = o.time_limit;
  if (config.time_limit <= 0.0) {
    config.time_limit = 10.0;
    if (o.class_name.size() == 1) {
      if (auto preset = class_preset(o.class_name[0])) config.time_limit = preset->time_limit;
    }
  }
  return config;
}

int cmd_solve(const SolveOptions& o, std::ostream& out) {
  const Instance inst = load_instance(o.instance, parse_format(o.format));
  const SolverConfig config = make_config(o, parse_score_scheme(o.score), o.seed);
  RunRecord record{instance_name(o.instance), solve(inst, config), std::nullopt};
  const RunResult& r = record.result;

  out << "instance: " << record.instance << '\n';
  out << "objective: " << r.objective << '\n';
  out << "feasible: " << (r.feasible ? "yes" : "no") << '\n';
  if (r.has_lower_bound) out << "lower_bound: " << std::setprecision(10) << r.lower_bound << '\n';
  out << "penalized: " << std::setprecision(15) << r.penalized << '\n';
  out << "loops: " << r.loops << '\n';
  out << "seed: " << config.seed << '\n';
  out << "score: " << to_string(config.scheme) << '\n';
  out << "build: " << build_id() << '\n';
  out << "solution:";
  for (int j : r.incumbent.selected()) out << ' ' << j + 1;
  out << '\n';
  if (r.infeasible_signal) out << "status: infeasible (penalized value exceeds total cost)\n";

  std::string path = o.out;
  if (path.empty() && !output_dir().empty()) {
    path = (fs::path(output_dir()) /
            (record.instance + "-" + std::to_string(config.seed) + "." + o.emit))
               .string();
  }
  if (!path.empty()) {
    write_file(path, o.emit == "csv" ? to_csv({record}) : to_json(record) + "\n");
  }
  if (r.infeasible_signal || !r.feasible) return kExitInfeasible;
  return kExitOk;
}

struct GenerateOptions {
  std::string class_name;
  int type = 1;
  int index = 1;
  std::uint64_t seed = 1;
  std::string out;
  GeneratorParams manual;
};

int cmd_generate(GenerateOptions o, std::ostream& out, std::ostream& err) {
  GeneratorParams params;
  std::string name;
  if (!o.class_name.empty()) {
    auto p = o.class_name.size() == 1 ? class_params(o.class_name[0], o.type, o.index, o.seed)
                                      : std::nullopt;
    if (!p) {
      err << "error: unknown class '" << o.class_name << "' or type " << o.type << '\n';
      return kExitError;
    }
    params = *p;
    name = o.class_name + "." + std::to_string(o.index) + "-t" + std::to_string(o.type);
  } else {
    params = o.manual;
    params.seed = o.seed;
    name = "gen-" + std::to_string(params.m) + "x" + std::to_string(params.n);
  }
  const Instance inst = generate(params);
  err << "generated " << inst.num_rows() << " x " << inst.num_cols() << ", "
      << inst.num_blocks() << " blocks (cap " << params.cap << " of " << params.block_size
      << "), density " << std::setprecision(4) << inst.density() * 100 << "% (target "
      << params.density * 100 << "%)\n";

  std::string path = o.out;
  if (path.empty() && !output_dir().empty()) {
    path = (fs::path(output_dir()) / (name + ".gub")).string();
  }
  if (path.empty()) {
    out << serialize_gub(inst);
  } else {
    write_file(path, serialize_gub(inst));
    out << path << '\n';
  }
  return kExitOk;
}

int cmd_bound(const std::string& path, const std::string& format, int max_iterations,
              std::ostream& out) {
  const Instance inst = load_instance(path, parse_format(format));
  // Upper bound: plain greedy (width 1) under the initial weights.
  SubgradientParams params;
  params.max_iterations = max_iterations;
  const auto w_bar = initial_weights(inst);
  Rng rng(1);
  const double ub = penalized_objective(inst, randomized_greedy(inst, w_bar, rng, false, 1), w_bar);
  const SubgradientResult r = subgradient_method(inst, ub, params);
  out << "instance: " << instance_name(path) << '\n';
  out << "lower_bound: " << std::setprecision(10) << r.lower_bound << '\n';
  out << "upper_bound: " << std::setprecision(15) << ub << '\n';
  out << "iterations: " << r.iterations << '\n';
  out << "build: " << build_id() << '\n';
  return kExitOk;
}

struct BenchOptions {
  SolveOptions solve;
  std::vector<std::string> instances;
  std::string dir;
  std::vector<std::string> schemes{"lagrangian", "normalized", "pseudo", "none"};
  int seeds = 1;
  std::uint64_t first_seed = 1;
  int workers = 1;
  std::string best;
  std::string out;
};

std::string class_of(const std::string& name) {
  const auto dot = name.find('.');
  return dot == std::string::npos ? name : name.substr(0, dot);
}

int cmd_bench(BenchOptions o, std::ostream& out, std::ostream& err) {
  std::vector<std::string> paths = o.instances;
  if (!o.dir.empty()) {
    std::vector<std::string> found;
    for (const auto& entry : fs::directory_iterator(o.dir)) {
      if (entry.is_regular_file()) found.push_back(entry.path().string());
    }
    std::sort(found.begin(), found.end());
    paths.insert(paths.end(), found.begin(), found.end());
  }
  if (paths.empty()) {
    err << "error: no instances given\n";
    return kExitError;
  }
  std::vector<ScoreScheme> schemes;
  for (const auto& s : o.schemes) schemes.push_back(parse_score_scheme(s));

  std::map<std::string, double> best_known;
  if (!o.best.empty()) {
    std::istringstream in(read_file(o.best));
    std::string name;
    double value;
    while (in >> name >> value) best_known[name] = value;
  }

  const Format format = parse_format(o.solve.format);
  std::vector<Instance> instances;
  std::vector<std::string> names;
  for (const auto& p : paths) {
    instances.push_back(load_instance(p, format));
    names.push_back(instance_name(p));
  }

  struct Job {
    int instance;
    ScoreScheme scheme;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (int i = 0; i < static_cast<int>(instances.size()); ++i) {
    for (ScoreScheme scheme : schemes) {
      for (int s = 0; s < o.seeds; ++s) jobs.push_back({i, scheme, o.first_seed + s});
    }
  }

  std::vector<RunRecord> records(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < jobs.size();) {
      const Job& job = jobs[k];
      records[k] = RunRecord{names[job.instance],
                             solve(instances[job.instance],
                                   make_config(o.solve, job.scheme, job.seed)),
                             std::nullopt};
    }
  };
  const int workers = std::max(1, std::min<int>(o.workers, static_cast<int>(jobs.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < workers; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  if (!o.out.empty()) write_file(o.out, to_csv(records));

  // Per class and scheme: mean objective and mean relative gap to the best
  // known value, (z - z_best) / z * 100.
  struct Summary {
    double objective = 0.0;
    double gap = 0.0;
    int runs = 0;
    int gaps = 0;
  };
  std::map<std::pair<std::string, std::string>, Summary> summary;
  for (const RunRecord& rec : records) {
    auto& s = summary[{class_of(rec.instance), to_string(rec.result.config.scheme)}];
    s.objective += static_cast<double>(rec.result.objective);
    ++s.runs;
    auto it = best_known.find(rec.instance);
    if (it != best_known.end() && rec.result.objective > 0) {
      s.gap += relative_gap(static_cast<double>(rec.result.objective), it->second);
      ++s.gaps;
    }
  }
  std::ostringstream table;
  table << "# smcp-bench-summary v1\nclass,score,runs,mean_objective,mean_gap_percent\n";
  table << std::fixed << std::setprecision(3);
  for (const auto& [key, s] : summary) {
    table << key.first << ',' << key.second << ',' << s.runs << ',' << s.objective / s.runs
          << ',';
    if (s.gaps > 0) table << s.gap / s.gaps;
    table << '\n';
  }
  out << table.str();
  if (!o.out.empty()) write_file(o.out + ".summary.csv", table.str());
  return kExitOk;
}

int cmd_check(const std::string& path, const std::string& format,
              const std::string& solution_path, std::optional<Cost> expect, std::ostream& out,
              std::ostream& err) {
  const Instance inst = load_instance(path, parse_format(format));
  Solution x;
  try {
    x = parse_solution(read_file(solution_path), inst.num_cols());
  } catch (const ParseError& e) {
    err << "error: solution: " << e.what() << '\n';
    return kExitError;
  }
  bool ok = true;
  for (int h = 0; h < inst.num_blocks(); ++h) {
    int count = 0;
    for (int j : inst.block_columns(h)) count += x[j] ? 1 : 0;
    if (count > inst.cap(h)) {
      out << "GUB cap violated: block " << h + 1 << " (" << count << " > " << inst.cap(h)
          << ")\n";
      ok = false;
    }
  }
  const auto s = coverage_counts(inst, x);
  for (int i = 0; i < inst.num_rows(); ++i) {
    if (s[i] < inst.demand(i)) {
      out << "row " << i + 1 << " under-covered (" << s[i] << " < " << inst.demand(i) << ")\n";
      ok = false;
    }
  }
  const Cost z = objective(inst, x);
  out << "objective: " << z << '\n';
  if (expect && *expect != z) {
    out << "expected objective " << *expect << '\n';
    ok = false;
  }
  out << (ok ? "feasible\n" : "infeasible\n");
  return ok ? kExitOk : kExitInfeasible;
}

}  // namespace

double relative_gap(double z, double z_best) { return (z - z_best) / z * 100.0; }

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Heuristic solver for set multicover with GUB constraints"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(build_id()));

  SolveOptions solve_opts;
  auto* solve_cmd = app.add_subcommand("solve", "Solve one instance");
  solve_cmd->add_option("--instance", solve_opts.instance, "Instance file")->required();
  add_solver_flags(solve_cmd, solve_opts);
  solve_cmd->add_option("--score", solve_opts.score, "Column score for the core problem")
      ->check(CLI::IsMember({"lagrangian", "normalized", "pseudo", "none"}))
      ->capture_default_str();
  solve_cmd->add_option("--seed", solve_opts.seed, "Random seed")->capture_default_str();
  solve_cmd->add_option("--out", solve_opts.out, "Result file");
  solve_cmd->add_option("--emit", solve_opts.emit, "Result file format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();

  GenerateOptions gen;
  gen.manual.density = 0.02;
  auto* gen_cmd = app.add_subcommand("generate", "Generate a random instance");
  gen_cmd->add_option("--class", gen.class_name, "Benchmark class G..N");
  gen_cmd->add_option("--type", gen.type, "GUB type 1..4")->capture_default_str();
  gen_cmd->add_option("--index", gen.index, "Instance index within the class")
      ->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
  gen_cmd->add_option("--out", gen.out, "Output file (native gub format)");
  gen_cmd->add_option("--m", gen.manual.m, "Rows");
  gen_cmd->add_option("--n", gen.manual.n, "Columns");
  gen_cmd->add_option("--density", gen.manual.density, "Coverage density")
      ->capture_default_str();
  gen_cmd->add_option("--cost-lo", gen.manual.cost_lo)->capture_default_str();
  gen_cmd->add_option("--cost-hi", gen.manual.cost_hi)->capture_default_str();
  gen_cmd->add_option("--demand-lo", gen.manual.demand_lo)->capture_default_str();
  gen_cmd->add_option("--demand-hi", gen.manual.demand_hi)->capture_default_str();
  gen_cmd->add_option("--block-size", gen.manual.block_size, "GUB block size g")
      ->capture_default_str();
  gen_cmd->add_option("--cap", gen.manual.cap, "GUB cap d")->capture_default_str();

  std::string bound_instance, bound_format = "gub";
  int bound_iterations = 0;
  auto* bound_cmd = app.add_subcommand("bound", "Compute a Lagrangian lower bound");
  bound_cmd->add_option("--instance", bound_instance, "Instance file")->required();
  bound_cmd->add_option("--format", bound_format)
      ->check(CLI::IsMember({"orlib", "rail", "gub"}))
      ->capture_default_str();
  bound_cmd->add_option("--max-iterations", bound_iterations, "0 selects 10 m");

  BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "Run a scheme grid over instances");
  bench_cmd->add_option("--instance", bench.instances, "Instance file (repeatable)");
  bench_cmd->add_option("--dir", bench.dir, "Directory of instances");
  add_solver_flags(bench_cmd, bench.solve);
  bench_cmd->add_option("--schemes", bench.schemes, "Scores to compare")
      ->delimiter(',')
      ->check(CLI::IsMember({"lagrangian", "normalized", "pseudo", "none"}));
  bench_cmd->add_option("--seeds", bench.seeds, "Seeds per configuration")
      ->capture_default_str();
  bench_cmd->add_option("--first-seed", bench.first_seed)->capture_default_str();
  bench_cmd->add_option("--workers", bench.workers, "Concurrent solves")
      ->capture_default_str();
  bench_cmd->add_option("--best", bench.best, "File of 'instance value' best-known lines");
  bench_cmd->add_option("--out", bench.out, "Per-run CSV file");

  std::string check_instance, check_format = "gub", check_solution;
  std::optional<Cost> check_expect;
  auto* check_cmd = app.add_subcommand("check", "Verify a solution");
  check_cmd->add_option("--instance", check_instance, "Instance file")->required();
  check_cmd->add_option("--format", check_format)
      ->check(CLI::IsMember({"orlib", "rail", "gub"}))
      ->capture_default_str();
  check_cmd->add_option("--solution", check_solution,
                        "File listing the selected 1-based columns")
      ->required();
  check_cmd->add_option("--expect", check_expect, "Expected objective value");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*solve_cmd) return cmd_solve(solve_opts, out);
    if (*gen_cmd) return cmd_generate(gen, out, err);
    if (*bound_cmd) return cmd_bound(bound_instance, bound_format, bound_iterations, out);
    if (*bench_cmd) return cmd_bench(bench, out, err);
    if (*check_cmd) {
      return cmd_check(check_instance, check_format, check_solution, check_expect, out, err);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace smcp
