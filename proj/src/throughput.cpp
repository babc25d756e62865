#include <chrono>
#include <memory>

#include "tabx/batch.hpp"
#include "tabx/throughput.hpp"

namespace tabx {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void advance(std::vector<StepResult>& envs, const std::vector<JointAction>& actions,
             const std::shared_ptr<const ScenarioConfig>& config, const ThroughputOptions& options,
             std::uint64_t& resets) {
  BatchOptions batch{options.threads, 0, false};
  if (options.serial) {
    step_batch_in_place_serial(envs, actions, batch);
  } else {
    step_batch_in_place(envs, actions, batch);
  }
  for (std::size_t k = 0; k < envs.size(); ++k) {
    if (envs[k].state.done) envs[k] = reset(config, options.seed + ++resets, k);
  }
}

}  // namespace

std::vector<ThroughputRow> benchmark_throughput(const ScenarioConfig& config, std::span<const int> env_counts,
                                                int steps, const ThroughputOptions& options) {
  ScenarioConfig driven = config;
  for (TeamConfig& t : driven.teams) {
    if (t.controller == Controller::external) t.controller = Controller::random;
  }
  auto shared = std::make_shared<const ScenarioConfig>(driven);
  const int agents = static_cast<int>(driven.units.size());

  std::vector<ThroughputRow> rows;
  for (int n : env_counts) {
    ThroughputRow row;
    row.envs = n;
    row.steps = steps;
    if (n > 0 && steps > 0) {
      std::vector<std::shared_ptr<const ScenarioConfig>> configs(n, shared);
      std::vector<std::uint64_t> seeds(n, options.seed);
      std::vector<StepResult> envs = reset_batch(configs, seeds, {options.threads, 0, false});
      // Non-external teams ignore these entries.
      const std::vector<JointAction> actions(n, JointAction(static_cast<std::size_t>(driven.max_units), kNoOp));
      std::uint64_t resets = 0;
      for (int s = 0; s < options.warmup_steps; ++s) advance(envs, actions, shared, options, resets);
      const auto start = Clock::now();
      for (int s = 0; s < steps; ++s) advance(envs, actions, shared, options, resets);
      row.seconds = seconds_since(start);
      row.env_steps = static_cast<long long>(n) * steps;
      if (row.seconds > 0.0) {
        row.env_steps_per_sec = static_cast<double>(row.env_steps) / row.seconds;
        row.agent_steps_per_sec = row.env_steps_per_sec * agents;
      }
    }
    rows.push_back(row);
  }
  return rows;
}

ResetLatency measure_reset_latency(std::span<const ScenarioConfig> configs, std::uint64_t seed) {
  ResetLatency out;
  if (configs.empty()) return out;
  (void)reset(configs.front(), seed);
  double total = 0.0;
  for (const ScenarioConfig& c : configs) {
    const auto start = Clock::now();
    StepResult r = reset(c, seed);
    const double ms = seconds_since(start) * 1e3;
    out.millis.push_back(ms);
    out.max_ms = std::max(out.max_ms, ms);
    total += ms;
  }
  out.mean_ms = total / static_cast<double>(configs.size());
  return out;
}

}  // namespace tabx
