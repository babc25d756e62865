#pragma once

// Role-modulated, priority-based controller for non-player teams.

#include <cstdint>
#include <optional>
#include <span>

#include "tabx/core.hpp"
#include "tabx/matrix.hpp"
#include "tabx/rng.hpp"

namespace tabx {

struct RoleFlags {
  bool assassin = false;
  bool ranger = false;
  bool healer = false;

  bool operator==(const RoleFlags&) const = default;
};

RoleFlags classify_roles(const UnitSpec& spec, const HeuristicParams& params);

/// Last known position (and body radius) of the unit's most recent target.
struct HeuristicMemory {
  Vec2 last_seen_position;
  double last_seen_radius = 0.0;
  bool valid = false;

  bool operator==(const HeuristicMemory&) const = default;
};

/// Margin kept between bodies when computing standoff positions.
inline constexpr double kStandoffMargin = 0.5;

/// Healers: nearest visible injured ally, else nearest visible ally.
/// Assassins: visible enemy with the lowest max health, then distance, then index.
/// Everyone else: nearest visible enemy, index tie-break.
std::optional<int> select_heuristic_target(int i, std::span<const UnitState> units, const BoolMatrix& visibility,
                                           RoleFlags roles);

/// Assassins go behind the target, healers onto it, everyone else in front
/// of it at a standoff of 0.8 * attack_range, floored at body contact and
/// capped at 0.8 * sight_range.
Vec2 desired_position(const UnitState& self, const UnitState& target, RoleFlags roles);

struct HeuristicView {
  std::span<const UnitState> units;
  std::span<const Zone> zones;
  const BoolMatrix& visibility;
  const BoolMatrix& attackable;
  const PhysicsParams& physics;
  const FieldSpec& field;
};

/// Picks an action for alive unit i and updates its memory. valid_actions
/// is the unit's action-mask row (kNumActions entries). With probability
/// epsilon the choice is replaced by a uniform valid action.
int heuristic_step(int i, const HeuristicView& view, HeuristicMemory& memory, const HeuristicParams& params,
                   std::span<const std::uint8_t> valid_actions, const RandomDraw& draw);

/// Uniform choice over the valid entries of a mask row.
int uniform_valid_action(std::span<const std::uint8_t> valid_actions, const RandomDraw& draw, RandomTag tag);

}  // namespace tabx
