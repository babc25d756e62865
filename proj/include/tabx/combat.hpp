#pragma once

// Hurtbox geometry, attackable matrix, target selection and damage.

#include <optional>
#include <span>
#include <vector>

#include "tabx/core.hpp"
#include "tabx/matrix.hpp"

namespace tabx {

/// attacked(i, j): unit i landed an attack or heal on unit j this step.
using InteractionMatrix = BoolMatrix;

/// Forward rectangle of length attack_range and half-width body_radius,
/// gated by the attacker's FoV cone. True when target's body circle touches it.
bool hurtbox_hit(const UnitState& attacker, const UnitState& target);

/// hurtbox_hit against each target; the attacker's own slot is always false.
std::vector<bool> hurtbox_hits(int attacker, std::span<const UnitState> units);

/// Hurtbox overlap, role polarity (damage > 0 hits enemies, damage < 0 heals
/// allies), attacker alive, target alive, and target visible to attacker.
BoolMatrix attackable_matrix(std::span<const UnitState> units, const BoolMatrix& visibility);

/// Closest attackable unit to i; ties go to the lowest index.
std::optional<int> select_target(int i, const BoolMatrix& attackable, std::span<const UnitState> units);

/// Executes attack actions from units with zero cooldown. Damage from every
/// attacker is computed against the pre-step health snapshot and applied
/// together, clamped to [0, max_health]. An attack without a target still
/// starts the cooldown.
InteractionMatrix resolve_combat(std::span<UnitState> units, std::span<const int> actions,
                                 const BoolMatrix& attackable);

}  // namespace tabx
