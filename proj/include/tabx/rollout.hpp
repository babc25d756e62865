#pragma once

// Episode rollouts with scripted controllers and summary metrics.

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <memory>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "tabx/environment.hpp"
#include "tabx/trace.hpp"

namespace tabx {

/// Recorded actions keyed by episode, then step (t - 1), then slot.
struct ReplayScript {
  std::map<int, std::vector<std::map<int, int>>> actions;

  std::optional<int> action(int episode, int step, int slot) const;
};

ReplayScript replay_from_trace(const std::vector<TraceRecord>& records);

/// "random", "heuristic:<tier>" or "replay:<trace path>".
struct PolicySpec {
  enum class Kind { random, heuristic, replay };
  Kind kind = Kind::random;
  HeuristicParams heuristic;
  std::string source;  // tier name or replay path
  std::shared_ptr<const ReplayScript> replay;

  std::string str() const;
};

/// Throws std::invalid_argument for unknown tiers or syntax, and
/// std::runtime_error when a replay trace cannot be read.
PolicySpec parse_policy(std::string_view text);

/// Sets each team's controller from its policy. Replay teams become external.
ScenarioConfig apply_policies(const ScenarioConfig& config, const PolicySpec& ally, const PolicySpec& enemy);

struct RolloutOptions {
  int threads = 0;     // <= 0: OpenMP default
  int batch_size = 1;  // 1: episodes run in parallel; >1: groups stepped with step_batch
  std::ostream* trace = nullptr;
  std::filesystem::path svg_dir;  // empty: no frames
  int svg_episodes = 1;           // frames are written for the first N episodes
};

struct RolloutSummary {
  int episodes = 0;
  int wins = 0;
  int first_kills = 0;  // episodes whose first death was an enemy unit only
  double total_return = 0.0;
  long long total_length = 0;
  double win_rate = 0.0;
  double mean_return = 0.0;
  double mean_length = 0.0;
  double first_kill_rate = 0.0;

  bool operator==(const RolloutSummary&) const = default;
};

/// Episode e resets with (seed, stream e), so results and trace bytes do not
/// depend on threads or batch size. Traces are written in episode order.
RolloutSummary run_rollouts(const ScenarioConfig& config, const PolicySpec& ally, const PolicySpec& enemy,
                            int episodes, std::uint64_t seed, const RolloutOptions& options = {});

/// Recomputes the summary from trace records alone.
RolloutSummary summarize_trace(const std::vector<TraceRecord>& records);

}  // namespace tabx
