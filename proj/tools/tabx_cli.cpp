// tabx: rollouts, throughput benchmark, validation, level generation and
// mutation, and catalog export from the command line.

#include <CLI11.hpp>
#include <omp.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "tabx/canonical_json.hpp"
#include "tabx/catalog.hpp"
#include "tabx/levelgen.hpp"
#include "tabx/rollout.hpp"
#include "tabx/scenario_io.hpp"
#include "tabx/throughput.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInvalid = 2;

// A path to a scenario file, else a catalog or composition name.
tabx::ScenarioConfig resolve_scenario(const std::string& ref) {
  if (fs::is_regular_file(ref)) {
    auto loaded = tabx::load_scenario_file(ref);
    for (const auto& n : loaded.notes) std::cerr << "note: " << n << "\n";
    return loaded.config;
  }
  return tabx::scenario_by_name(ref);
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    const int v = std::stoi(item, &used);
    if (used != item.size() || v < 0) throw std::invalid_argument("bad count '" + item + "' in list");
    out.push_back(v);
  }
  return out;
}

json summary_json(const tabx::RolloutSummary& s) {
  return {{"episodes", s.episodes},         {"win_rate", s.win_rate},
          {"mean_return", s.mean_return},   {"mean_length", s.mean_length},
          {"first_kill_rate", s.first_kill_rate}};
}

struct RunArgs {
  std::string scenario;
  int episodes = 1;
  std::uint64_t seed = 0;
  std::string ally = "random";
  std::string enemy = "heuristic:medium";
  std::string trace;
  std::string svg;
  int svg_episodes = 1;
  int threads = 0;
  int batch = 1;
};

int cmd_run(const RunArgs& a) {
  const auto config = resolve_scenario(a.scenario);
  const auto ally = tabx::parse_policy(a.ally);
  const auto enemy = tabx::parse_policy(a.enemy);
  tabx::RolloutOptions options;
  options.threads = a.threads;
  options.batch_size = a.batch;
  options.svg_dir = a.svg;
  options.svg_episodes = a.svg_episodes;
  std::ofstream trace;
  if (!a.trace.empty()) {
    trace.open(a.trace, std::ios::binary | std::ios::trunc);
    if (!trace) throw std::runtime_error("cannot write trace " + a.trace);
    options.trace = &trace;
  }
  const auto summary = tabx::run_rollouts(config, ally, enemy, a.episodes, a.seed, options);
  std::cout << tabx::canonical_dump(summary_json(summary)) << "\n";
  return kExitOk;
}

struct BenchArgs {
  std::string scenario;
  std::string envs = "1,64,1024";
  int steps = 200;
  int threads = 0;
  bool serial = false;
  int reset_scenarios = 100;
};

int cmd_bench(const BenchArgs& a) {
  const auto config = resolve_scenario(a.scenario);
  const auto counts = parse_int_list(a.envs);
  tabx::ThroughputOptions options;
  options.threads = a.threads;
  options.serial = a.serial;
  const int threads = a.threads > 0 ? a.threads : omp_get_max_threads();
  std::printf("scenario %s, %d steps, %d thread(s)%s\n", config.name.c_str(), a.steps, threads,
              a.serial ? ", serial" : "");
  std::printf("%8s %12s %10s %16s %18s\n", "envs", "env_steps", "seconds", "env_steps/s", "agent_steps/s");
  for (const auto& r : tabx::benchmark_throughput(config, counts, a.steps, options)) {
    std::printf("%8d %12lld %10.4f %16.1f %18.1f\n", r.envs, r.env_steps, r.seconds, r.env_steps_per_sec,
                r.agent_steps_per_sec);
  }
  if (a.reset_scenarios > 0) {
    auto spec = tabx::default_levelgen_spec(config);
    tabx::LevelRng rng(0);
    std::vector<tabx::ScenarioConfig> levels;
    for (int k = 0; k < a.reset_scenarios; ++k) levels.push_back(tabx::sample_level(spec, rng));
    const auto latency = tabx::measure_reset_latency(levels);
    std::printf("reset over %d distinct scenarios: mean %.4f ms, max %.4f ms\n", a.reset_scenarios,
                latency.mean_ms, latency.max_ms);
  }
  return kExitOk;
}

int cmd_validate(const std::string& path) {
  try {
    auto loaded = tabx::load_scenario_file(path);
    for (const auto& n : loaded.notes) std::cout << "note: " << n << "\n";
    std::cout << "ok: " << path << "\n";
    return kExitOk;
  } catch (const tabx::ScenarioFormatError& e) {
    std::cout << "malformed: " << path << ": " << e.what() << "\n";
    return kExitInvalid;
  } catch (const tabx::ScenarioError& e) {
    std::cout << "invalid: " << path << "\n" << e.report().str();
    return kExitInvalid;
  }
}

struct GenArgs {
  std::string spec;
  int count = 1;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_gen(const GenArgs& a) {
  const auto spec = tabx::levelgen_spec_from_json(json::parse(tabx::read_text_file(a.spec)));
  fs::create_directories(a.out);
  tabx::LevelRng rng(a.seed);
  for (int k = 0; k < a.count; ++k) {
    auto level = tabx::sample_level(spec, rng);
    char suffix[16];
    std::snprintf(suffix, sizeof suffix, "%05d", k);
    level.name = spec.base.name + "-gen" + suffix;
    auto report = tabx::validate_scenario(level);
    if (!report.ok()) throw tabx::ScenarioError(report);
    tabx::save_scenario_file(level, fs::path(a.out) / ("level_" + std::string(suffix) + ".json"));
  }
  std::cout << "wrote " << a.count << " level(s) to " << a.out << "\n";
  return kExitOk;
}

struct MutateArgs {
  std::string scenario;
  std::string op = "perturb";
  double delta = 0.1;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_mutate(const MutateArgs& a) {
  const auto config = resolve_scenario(a.scenario);
  const auto kind = tabx::parse_mutation_kind(a.op);
  if (!kind) throw std::invalid_argument("unknown mutation op '" + a.op + "'");
  tabx::LevelRng rng(a.seed);
  const auto mutated = tabx::mutate_level(config, {*kind, a.delta}, tabx::default_levelgen_spec(config), rng);
  auto report = tabx::validate_scenario(mutated);
  if (!report.ok()) throw tabx::ScenarioError(report);
  tabx::save_scenario_file(mutated, a.out);
  std::cout << "wrote " << a.out << "\n";
  return kExitOk;
}

int cmd_catalog(bool list, const std::string& export_dir) {
  const auto& entries = tabx::catalog();
  if (!export_dir.empty()) {
    for (const auto& [name, e] : entries) {
      const fs::path path = fs::path(export_dir) / e.path;
      fs::create_directories(path.parent_path());
      tabx::save_scenario_file(e.config, path);
    }
    std::cout << "exported " << entries.size() << " scenario(s) to " << export_dir << "\n";
  }
  if (list || export_dir.empty()) {
    for (const auto& [name, e] : entries) {
      std::printf("%-10s %-28s units %2zu  zones %zu\n", std::string(tabx::to_string(e.kind)).c_str(), name.c_str(),
                  e.config.units.size(), e.config.zones.size());
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"TABX battle simulator harness"};
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Roll out episodes and print summary metrics");
  run_cmd->add_option("--scenario", run.scenario, "Scenario file, catalog name or composition")->required();
  run_cmd->add_option("--episodes", run.episodes)->check(CLI::NonNegativeNumber);
  run_cmd->add_option("--seed", run.seed);
  run_cmd->add_option("--ally", run.ally, "random | heuristic:<tier> | replay:<trace>");
  run_cmd->add_option("--enemy", run.enemy, "random | heuristic:<tier> | replay:<trace>");
  run_cmd->add_option("--trace", run.trace, "JSONL trace output");
  run_cmd->add_option("--svg", run.svg, "Directory for SVG frames");
  run_cmd->add_option("--svg-episodes", run.svg_episodes);
  run_cmd->add_option("--threads", run.threads);
  run_cmd->add_option("--batch", run.batch, "Episodes stepped together per batch")->check(CLI::PositiveNumber);

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Measure batched steps per second");
  bench_cmd->add_option("--scenario", bench.scenario)->required();
  bench_cmd->add_option("--envs", bench.envs, "Comma-separated environment counts");
  bench_cmd->add_option("--steps", bench.steps)->check(CLI::NonNegativeNumber);
  bench_cmd->add_option("--threads", bench.threads);
  bench_cmd->add_flag("--serial", bench.serial, "Use the serial reference step");
  bench_cmd->add_option("--reset-scenarios", bench.reset_scenarios, "Random scenarios for reset latency");

  std::string validate_path;
  auto* validate_cmd = app.add_subcommand("validate", "Check a scenario file");
  validate_cmd->add_option("file", validate_path)->required();

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Sample levels from a level spec");
  gen_cmd->add_option("--spec", gen.spec)->required();
  gen_cmd->add_option("--count", gen.count)->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--seed", gen.seed);
  gen_cmd->add_option("--out", gen.out)->required();

  MutateArgs mutate;
  auto* mutate_cmd = app.add_subcommand("mutate", "Apply one mutation operator");
  mutate_cmd->add_option("--scenario", mutate.scenario)->required();
  mutate_cmd->add_option("--op", mutate.op, "perturb | swap-axes | retype");
  mutate_cmd->add_option("--delta", mutate.delta)->check(CLI::Range(0.0, 1.0));
  mutate_cmd->add_option("--seed", mutate.seed);
  mutate_cmd->add_option("--out", mutate.out)->required();

  bool list = false;
  std::string export_dir;
  auto* catalog_cmd = app.add_subcommand("catalog", "List or export the built-in scenarios");
  catalog_cmd->add_flag("--list", list);
  catalog_cmd->add_option("--export", export_dir);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitError;
  }

  try {
    if (*run_cmd) return cmd_run(run);
    if (*bench_cmd) return cmd_bench(bench);
    if (*validate_cmd) return cmd_validate(validate_path);
    if (*gen_cmd) return cmd_gen(gen);
    if (*mutate_cmd) return cmd_mutate(mutate);
    if (*catalog_cmd) return cmd_catalog(list, export_dir);
  } catch (const tabx::ScenarioError& e) {
    std::cerr << "invalid scenario\n" << e.report().str();
    return kExitInvalid;
  } catch (const tabx::ScenarioFormatError& e) {
    std::cerr << "malformed scenario: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
