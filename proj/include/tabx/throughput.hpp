#pragma once

// Throughput and reconfiguration-latency measurements.

#include <cstdint>
#include <span>
#include <vector>

#include "tabx/core.hpp"

namespace tabx {

struct ThroughputOptions {
  int threads = 0;        // <= 0: OpenMP default
  int warmup_steps = 10;  // untimed steps before each measurement
  std::uint64_t seed = 0;
  bool serial = false;  // use the serial reference batch step
};

struct ThroughputRow {
  int envs = 0;
  int steps = 0;
  long long env_steps = 0;
  double seconds = 0.0;
  double env_steps_per_sec = 0.0;
  double agent_steps_per_sec = 0.0;  // env steps times active units
};

/// Steps `envs` copies of the scenario `steps` times with finished
/// environments reset in place. External teams are driven by the random
/// controller.
std::vector<ThroughputRow> benchmark_throughput(const ScenarioConfig& config, std::span<const int> env_counts,
                                                int steps, const ThroughputOptions& options = {});

struct ResetLatency {
  std::vector<double> millis;  // one per config, after one warmup reset
  double max_ms = 0.0;
  double mean_ms = 0.0;
};

ResetLatency measure_reset_latency(std::span<const ScenarioConfig> configs, std::uint64_t seed = 0);

}  // namespace tabx
