#pragma once

// Single-environment reset/step API: physics, actions and combat, zone
// effects, then reward, termination and observation construction.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "tabx/actions.hpp"
#include "tabx/core.hpp"
#include "tabx/heuristics.hpp"
#include "tabx/matrix.hpp"
#include "tabx/perception.hpp"
#include "tabx/rng.hpp"

namespace tabx {

struct EpisodeInfo {
  std::optional<Outcome> outcome;
  std::optional<int> first_kill_team;  // team credited with the first death on the other side
  bool first_kill_resolved = false;    // set once any unit has died
  int episode_length = 0;
  double episode_return = 0.0;  // ally perspective, terminal reward included

  bool operator==(const EpisodeInfo&) const = default;
};

struct EnvState {
  std::shared_ptr<const ScenarioConfig> config;
  std::vector<UnitState> units;  // max_units slots; padding slots inactive
  std::vector<Zone> zones;       // max_zones slots; padding slots inactive
  std::vector<HeuristicMemory> memory;
  RandomStream rng;
  int t = 0;
  double prev_health_gap = 0.0;
  double rotation_step = 0.0;  // radians
  bool done = false;
  EpisodeInfo info;

  ObservationLayout layout() const;

  bool operator==(const EnvState& o) const;
};

/// One action id per unit slot. Entries for units on heuristic- or
/// random-controlled teams are ignored; inactive or dead slots take kNoOp.
using JointAction = std::vector<int>;

struct StepResult {
  EnvState state;
  std::vector<float> observations;      // max_units x layout.total(), row-major
  std::vector<float> global_state;      // layout.global_total()
  std::vector<double> rewards;          // per slot; allies get r, enemies -r, padding 0
  std::vector<std::uint8_t> action_mask;  // max_units x kNumActions
  std::vector<int> executed_actions;    // per slot, after controller mapping
  double reward = 0.0;                  // ally team reward for this step
  bool terminated = false;
  bool truncated = false;
  EpisodeInfo info;

  std::span<const float> observation(int slot) const;
  std::span<const std::uint8_t> mask_row(int slot) const;

  bool operator==(const StepResult&) const = default;
};

class ActionError : public std::runtime_error {
 public:
  ActionError(int agent, int action, const std::string& why);
  int agent() const { return agent_; }
  int action() const { return action_; }

 private:
  int agent_;
  int action_;
};

/// Validates config and builds the initial state. stream identifies the
/// environment inside a batch for the random-stream contract.
StepResult reset(std::shared_ptr<const ScenarioConfig> config, std::uint64_t seed, std::uint64_t stream = 0);
StepResult reset(const ScenarioConfig& config, std::uint64_t seed, std::uint64_t stream = 0);

/// Pure step: copies the state and advances the copy.
StepResult step(const EnvState& state, const JointAction& actions);

/// Advances env.state in place and refreshes every output field of env.
void step_in_place(StepResult& env, const JointAction& actions);

std::vector<std::uint8_t> action_mask(const EnvState& state);

/// Mean health ratio of allies minus that of enemies over the configured roster.
double health_gap(std::span<const UnitState> units);

/// Elimination outcome, or truncation outcome once t reaches max_steps.
std::optional<Outcome> terminal_outcome(const EnvState& state);

}  // namespace tabx
