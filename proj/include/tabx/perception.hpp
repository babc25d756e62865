#pragma once

// Field-of-view tests, bush concealment, observation and global-state vectors.

#include <span>

#include "tabx/core.hpp"
#include "tabx/matrix.hpp"

namespace tabx {

/// Absolute-scale normaliser for max health in observation vectors.
inline constexpr double kHealthReference = 1000.0;

/// Angular half of the FoV test only (no range check).
bool in_fov_cone(const UnitState& observer, Vec2 point);

/// Fan-shaped FoV: within sight_range and within sight_angle/2 of the heading.
bool in_fov(const UnitState& observer, Vec2 point);

/// visible(i, j): unit i can observe unit j.
BoolMatrix visibility_matrix(std::span<const UnitState> units, std::span<const Zone> zones);

/// Units that attacked or were attacked get reveal_timer = reveal_duration.
void update_reveal_timers(std::span<UnitState> units, const BoolMatrix& interactions, double reveal_duration);

struct ObservationLayout {
  static constexpr int own_dim = 15;
  static constexpr int per_other_dim = 17;
  static constexpr int per_zone_dim = 8;

  int max_units = 0;
  int max_zones = 0;

  int total() const { return own_dim + (max_units - 1) * per_other_dim + max_zones * per_zone_dim; }
  int global_total() const { return own_dim * max_units + per_zone_dim * max_zones; }

  bool operator==(const ObservationLayout&) const = default;
};

/// Writes the observation of unit i into out (size layout.total()).
/// Inactive observers get an all-zero vector.
void build_observation(int i, std::span<const UnitState> units, std::span<const Zone> zones,
                       const BoolMatrix& visibility, const BoolMatrix& attackable, const FieldSpec& field,
                       std::span<float> out);

/// Unmasked per-unit blocks (absolute positions) followed by zone blocks.
void build_global_state(std::span<const UnitState> units, std::span<const Zone> zones, const FieldSpec& field,
                        std::span<float> out);

}  // namespace tabx
